use serde::Serialize;

use crate::error::{Error, Result};

/// Identifies the class of configurations with order `n`, degree `d` and
/// `h` happy vertices. Both `n` and `d` are odd and `d <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassParams {
    n: u64,
    d: u64,
    h: u64,
}

impl ClassParams {
    pub fn new(n: u64, d: u64, h: u64) -> Result<Self> {
        check_order_degree(n, d)?;
        if h > n {
            return Err(Error::invalid(format!("h = {h} exceeds n = {n}")));
        }
        Ok(ClassParams { n, d, h })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    /// `n = 2q - 1`: the number of proponents that makes a configuration approving.
    pub fn q(&self) -> u64 {
        (self.n + 1) / 2
    }

    /// `d = 2b - 1`: happy neighbors needed for a proponent.
    pub fn b(&self) -> u64 {
        (self.d + 1) / 2
    }

    pub fn is_low_degree(&self) -> bool {
        self.d < self.q()
    }

    /// `t` with `n = 2d + 1 + 2t` (low-degree witness shape).
    pub fn low_degree_t(&self) -> Option<u64> {
        (self.n >= 2 * self.d + 1).then(|| (self.n - 2 * self.d - 1) / 2)
    }

    /// `t` with `n = 2h + 1 + 2t` (high-degree witness shape).
    pub fn happy_t(&self) -> Option<u64> {
        (self.n >= 2 * self.h + 1).then(|| (self.n - 2 * self.h - 1) / 2)
    }
}

/// Validates an (order, degree) pair of the theory: both odd, `1 <= d <= n`.
pub(crate) fn check_order_degree(n: u64, d: u64) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::invalid(format!("order n = {n} must be odd")));
    }
    if d % 2 == 0 {
        return Err(Error::invalid(format!("degree d = {d} must be odd")));
    }
    if d > n {
        return Err(Error::invalid(format!(
            "degree d = {d} exceeds order n = {n}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(ClassParams::new(9, 5, 4).is_ok());
        assert!(ClassParams::new(8, 5, 4).is_err());
        assert!(ClassParams::new(9, 4, 4).is_err());
        assert!(ClassParams::new(5, 7, 1).is_err());
        assert!(ClassParams::new(5, 3, 6).is_err());
    }

    #[test]
    fn derived_accessors() {
        let p = ClassParams::new(81, 9, 23).unwrap();
        assert_eq!((p.q(), p.b()), (41, 5));
        assert!(p.is_low_degree());
        assert_eq!(p.low_degree_t(), Some(31));
        assert_eq!(p.happy_t(), Some(17));
        let hi = ClassParams::new(9, 7, 4).unwrap();
        assert!(!hi.is_low_degree());
        assert_eq!(hi.low_degree_t(), None);
        assert_eq!(hi.happy_t(), Some(0));
    }
}
