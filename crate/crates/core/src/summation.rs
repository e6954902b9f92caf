use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SummationMode {
    Plain,
    #[default]
    Compensated,
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Running sum in either plain or compensated mode.
#[derive(Debug, Clone, Copy)]
pub enum Accumulator {
    Plain(f64),
    Compensated(NeumaierSum),
}

impl Accumulator {
    pub fn new(mode: SummationMode) -> Self {
        match mode {
            SummationMode::Plain => Accumulator::Plain(0.0),
            SummationMode::Compensated => Accumulator::Compensated(NeumaierSum::new()),
        }
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        match self {
            Accumulator::Plain(s) => *s += v,
            Accumulator::Compensated(n) => n.add(v),
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            Accumulator::Plain(s) => *s,
            Accumulator::Compensated(n) => n.value(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_lost_bits() {
        let vals = [1.0, 1e100, 1.0, -1e100];
        let mut plain = Accumulator::new(SummationMode::Plain);
        let mut comp = Accumulator::new(SummationMode::Compensated);
        for v in vals {
            plain.add(v);
            comp.add(v);
        }
        assert_eq!(plain.value(), 0.0);
        assert_eq!(comp.value(), 2.0);
    }

    #[test]
    fn tenths() {
        let mut s = NeumaierSum::new();
        for _ in 0..10 {
            s.add(0.1);
        }
        assert_eq!(s.value(), 1.0);
    }
}
