//! Branching schedules `n -> q_n` for the growing-degree experiment.

use std::fmt;
use std::str::FromStr;

use nbspec_core::random_models::MAX_SAMPLER_DEGREE;

use crate::error::{Error, Result};

const MAX_Q: usize = MAX_SAMPLER_DEGREE - 1;

/// `log`: `q = ⌊log₂ n⌋ - 3`, `loglog`: `q = ⌊log₂ log₂ n⌋`, both clamped to
/// `1..=7` so the degree stays within the sampler's cap. `fixed:Q` holds `q`
/// constant and serves as the negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Log,
    LogLog,
    Fixed(usize),
}

impl Schedule {
    pub fn branching(self, n: usize) -> usize {
        let log2 = |x: usize| (usize::BITS - 1 - x.max(1).leading_zeros()) as usize;
        match self {
            Schedule::Log => log2(n).saturating_sub(3).clamp(1, MAX_Q),
            Schedule::LogLog => log2(log2(n)).clamp(1, MAX_Q),
            Schedule::Fixed(q) => q,
        }
    }

    /// `q_n` for `n`, rejecting cells the sampler cannot produce.
    pub fn cell(self, n: usize) -> Result<usize> {
        let q = self.branching(n);
        let d = q + 1;
        if d > MAX_SAMPLER_DEGREE {
            return Err(Error::Input(format!("schedule {self} asks for degree {d} at n = {n}; the cap is {MAX_SAMPLER_DEGREE}")));
        }
        if d >= n || (n * d) % 2 == 1 {
            return Err(Error::Input(format!("no simple {d}-regular graph on {n} vertices")));
        }
        Ok(q)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Log => f.write_str("log"),
            Schedule::LogLog => f.write_str("loglog"),
            Schedule::Fixed(q) => write!(f, "fixed:{q}"),
        }
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Schedule::Log),
            "loglog" => Ok(Schedule::LogLog),
            _ => {
                let q = s
                    .strip_prefix("fixed:")
                    .and_then(|q| q.parse::<usize>().ok())
                    .ok_or_else(|| Error::Input(format!("unknown schedule `{s}` (expected log, loglog or fixed:Q)")))?;
                if !(1..=MAX_Q).contains(&q) {
                    return Err(Error::Input(format!("fixed branching {q} is outside 1..={MAX_Q}")));
                }
                Ok(Schedule::Fixed(q))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_schedule_on_the_desk_ladder() {
        let qs: Vec<usize> = [64, 256, 1024, 1 << 20].iter().map(|&n| Schedule::Log.branching(n)).collect();
        assert_eq!(qs, vec![3, 5, 7, 7]);
        assert_eq!(Schedule::LogLog.branching(1024), 3);
        assert_eq!(Schedule::LogLog.branching(4), 1);
    }

    #[test]
    fn parsing_and_display_agree() {
        for s in ["log", "loglog", "fixed:3"] {
            assert_eq!(s.parse::<Schedule>().unwrap().to_string(), s);
        }
        for bad in ["fixed:0", "fixed:8", "fixed:x", "linear"] {
            assert!(bad.parse::<Schedule>().is_err(), "{bad}");
        }
    }

    #[test]
    fn infeasible_cells_are_rejected() {
        assert!(Schedule::Fixed(3).cell(4).is_err());
        assert!(Schedule::Fixed(2).cell(11).is_err());
        assert_eq!(Schedule::Fixed(2).cell(12).unwrap(), 2);
    }
}
