//! Closed-form classification of the classes `G(n|d|h)`.
//!
//! Everything here is integer or exact rational arithmetic. The two
//! exceptional pairs `(5,3)` and `(9,5)` live in a lookup table so the
//! unexceptional formulas can be exercised on their own.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::check_order_degree;

pub type Rational = Ratio<i64>;

/// Pairs `(n, d)` where the support inequalities are not sufficient.
pub const EXCEPTIONAL_PAIRS: [(u64, u64); 2] = [(5, 3), (9, 5)];

pub fn is_exceptional(n: u64, d: u64) -> bool {
    EXCEPTIONAL_PAIRS.contains(&(n, d))
}

fn exception_indicator(n: u64, d: u64) -> u64 {
    u64::from(is_exceptional(n, d))
}

fn order_indicator(n: u64, set: &[u64]) -> i64 {
    i64::from(set.contains(&n))
}

fn check_odd_order(n: u64) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::invalid(format!("order n = {n} must be odd")));
    }
    Ok(())
}

fn rat(num: u64, den: u64) -> Rational {
    Rational::new(num as i64, den as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassStatus {
    UniformlyDisapproving,
    Mixed,
    UniformlyApproving,
}

impl ClassStatus {
    pub fn token(self) -> &'static str {
        match self {
            ClassStatus::UniformlyDisapproving => "uniformly_disapproving",
            ClassStatus::Mixed => "mixed",
            ClassStatus::UniformlyApproving => "uniformly_approving",
        }
    }
}

impl fmt::Display for ClassStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ClassStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniformly_disapproving" => Ok(ClassStatus::UniformlyDisapproving),
            "mixed" => Ok(ClassStatus::Mixed),
            "uniformly_approving" => Ok(ClassStatus::UniformlyApproving),
            other => Err(Error::invalid(format!("unknown class status `{other}`"))),
        }
    }
}

/// Lower bound on `h` from counting happy edge endpoints: `(n+1)(d+1)/(4d)`.
pub fn global_bound(n: u64, d: u64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    Ok(rat((n + 1) * (d + 1), 4 * d))
}

/// A proponent needs `(d+1)/2` happy neighbors, so approval needs at least that many.
pub fn local_bound(d: u64) -> Result<u64> {
    if d % 2 == 0 {
        return Err(Error::invalid(format!("degree d = {d} must be odd")));
    }
    Ok(d.div_ceil(2))
}

/// Where the global and local bound curves cross: `((n+1)/2, (n+3)/4)`.
pub fn intersection_point(n: u64) -> Result<(Rational, Rational)> {
    check_odd_order(n)?;
    Ok((rat(n + 1, 2), rat(n + 3, 4)))
}

/// Least `h` for which `G(n|d|h)` has an approving member.
pub fn hmin(n: u64, d: u64) -> Result<u64> {
    check_order_degree(n, d)?;
    // max{(n+1)/(2d), 1} picks the global bound exactly when n + 1 >= 2d
    let base = if n + 1 >= 2 * d {
        ((n + 1) * (d + 1)).div_ceil(4 * d)
    } else {
        (d + 1) / 2
    };
    Ok(base + exception_indicator(n, d))
}

/// Greatest `h` for which `G(n|d|h)` has a disapproving member.
pub fn hmax(n: u64, d: u64) -> Result<u64> {
    Ok(n - hmin(n, d)?)
}

pub fn classify(n: u64, d: u64, h: u64) -> Result<ClassStatus> {
    let lo = hmin(n, d)?;
    if h > n {
        return Err(Error::invalid(format!("h = {h} exceeds n = {n}")));
    }
    Ok(if h < lo {
        ClassStatus::UniformlyDisapproving
    } else if h <= n - lo {
        ClassStatus::Mixed
    } else {
        ClassStatus::UniformlyApproving
    })
}

/// Classifies by opinion weight `l = f(V) = 2h - n`.
pub fn weight_classify(n: u64, d: u64, l: i64) -> Result<ClassStatus> {
    check_order_degree(n, d)?;
    let ni = n as i64;
    if l.abs() > ni || (l + ni).is_odd() {
        return Err(Error::invalid(format!(
            "weight {l} is not attainable on {n} vertices (need |l| <= n, l = n mod 2)"
        )));
    }
    classify(n, d, ((l + ni) / 2) as u64)
}

mod ratio_text {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    /// 2-way security gap `(n+1)/2 - hmin`.
    pub r: i64,
    /// Uncertainty radius `n/2 - hmin`, a half-integer.
    #[serde(with = "ratio_text")]
    pub r_tilde: Rational,
    /// The same gap through `⌊min{(n+1)(d-1)/(4d), (n-d)/2}⌋` minus the exception indicator.
    pub r_from_degree: i64,
    /// Slack below the largest possible gap `(n-1)/4`.
    #[serde(with = "ratio_text")]
    pub delta: Rational,
    /// Greatest protecting level `(hmin - 1)/n`.
    #[serde(with = "ratio_text")]
    pub alpha1: Rational,
    /// Smallest trusting level `hmax/n`.
    #[serde(with = "ratio_text")]
    pub alpha2: Rational,
}

/// `⌊min{(n+1)(d-1)/(4d), (n-d)/2}⌋ - 1[(n,d) exceptional]`.
fn gap_from_degree(n: u64, d: u64) -> i64 {
    let low = rat((n + 1) * (d - 1), 4 * d);
    let high = rat(n - d, 2);
    low.min(high).floor().to_integer() - exception_indicator(n, d) as i64
}

pub fn security_gap(n: u64, d: u64) -> Result<GapReport> {
    let lo = hmin(n, d)?;
    let hi = n - lo;
    let r = ((n + 1) / 2) as i64 - lo as i64;
    let r_from_degree = gap_from_degree(n, d);
    assert_eq!(
        r, r_from_degree,
        "security gap routes disagree at (n, d) = ({n}, {d})"
    );
    Ok(GapReport {
        r,
        r_tilde: rat(n, 2) - Rational::from_integer(lo as i64),
        r_from_degree,
        delta: rat(n - 1, 4) - Rational::from_integer(r),
        alpha1: rat(lo - 1, n),
        alpha2: rat(hi, n),
    })
}

/// `G(n|d)` is 2-way `r0`-secure iff its security gap does not exceed `r0`.
pub fn is_two_way_secure(n: u64, d: u64, r0: Rational) -> Result<bool> {
    Ok(Rational::from_integer(security_gap(n, d)?.r) <= r0)
}

/// The two-interval description of security:
/// `d <= (n+1)/(n+1-4(r0+ι))` or `n - 2(r0+ι) <= d`, with `ι` the exception
/// indicator. It treats `min{..}` without the floor, so it can only be
/// stricter than [`is_two_way_secure`]; the two agree whenever that minimum is
/// an integer.
pub fn secure_by_intervals(n: u64, d: u64, r0: Rational) -> Result<bool> {
    check_order_degree(n, d)?;
    if r0 < Rational::zero() || r0 > rat(n - 1, 4) {
        return Err(Error::invalid(format!(
            "threshold r0 = {r0} outside [0, (n-1)/4]"
        )));
    }
    let shifted = r0 + Rational::from_integer(exception_indicator(n, d) as i64);
    let (nr, dr) = (
        Rational::from_integer(n as i64),
        Rational::from_integer(d as i64),
    );
    let den = nr + 1 - shifted * 4;
    let low_ok = den <= Rational::zero() || dr <= (nr + 1) / den;
    let high_ok = nr - shifted * 2 <= dr;
    Ok(low_ok || high_ok)
}

/// Whether `⌊min{..}⌋` in the gap formula drops a fractional part.
pub fn gap_minimum_is_integral(n: u64, d: u64) -> Result<bool> {
    check_order_degree(n, d)?;
    let low = rat((n + 1) * (d - 1), 4 * d);
    let high = rat(n - d, 2);
    Ok(low.min(high).is_integer())
}

/// `min_d hmin(n, d) = (n + 2 + n mod 4)/4`, plus one for `n ∈ {5, 9}`.
pub fn hmin_global(n: u64) -> Result<u64> {
    check_odd_order(n)?;
    Ok((n + 2 + n % 4) / 4 + order_indicator(n, &[5, 9]) as u64)
}

/// Segment `[left, right]` of odd degrees with `hmin(n,d) <= hmin(n) + m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeSegment {
    pub n: u64,
    pub m: u64,
    pub left: u64,
    pub right: u64,
    pub length: u64,
}

/// Odd `d` with `hmin(n,d) <= hmin(n) + m`, in increasing order.
pub fn low_support_degrees(n: u64, m: u64) -> Result<Vec<u64>> {
    let target = hmin_global(n)? + m;
    let mut out = Vec::new();
    for d in (1..=n).step_by(2) {
        if hmin(n, d)? <= target {
            out.push(d);
        }
    }
    Ok(out)
}

/// Direct sweep over all odd degrees; reports the hull of the qualifying set.
pub fn degree_segment_sweep(n: u64, m: u64) -> Result<DegreeSegment> {
    let ds = low_support_degrees(n, m)?;
    let (left, right) = (ds[0], ds[ds.len() - 1]);
    Ok(DegreeSegment {
        n,
        m,
        left,
        right,
        length: right - left,
    })
}

fn exact(r: Rational, what: &str, n: u64) -> Result<u64> {
    if !r.is_integer() || r < Rational::zero() {
        return Err(Error::invalid(format!(
            "closed form for {what} at n = {n} gave {r}, not a non-negative integer"
        )));
    }
    Ok(r.to_integer().to_u64().unwrap_or_default())
}

/// Residue-based closed forms for the segment ends and length, `m ∈ {0, 1}`.
pub fn degree_segment_closed_form(n: u64, m: u64) -> Result<DegreeSegment> {
    check_odd_order(n)?;
    let ni = n as i64;
    let (m3, m4, m8, m16) = (ni % 3, ni % 4, ni % 8, ni % 16);
    let r = |num: i64, den: i64| Rational::new(num, den);
    let i = Rational::from_integer;
    let (left, right, length) = match m {
        0 => {
            let ex = order_indicator(n, &[5, 9]);
            let left = r((m4 - 1) * (m8 - ni - 4) + 4 * ni + 4, 8) - i(2 * ex);
            let right = r(ni + m4, 2) + i(2 * ex);
            let length = r((m4 - 1) * (ni + 8 - m8), 8) + i(4 * ex);
            (left, right, length)
        }
        1 => {
            let ex = order_indicator(n, &[9]);
            let left = r((m4 - 1) * (ni + m16 - 2 * m8 + 8), 16)
                - r((m4 - 3) * (ni - 4 * m3 + 9), 12)
                - i(2 * ex);
            let right = r(ni + m4 + 4, 2).min(i(ni)) + i(2 * ex);
            let length = (r((m4 - 1) * (3 * ni + 2 * m8 - m16 + 20), 16)
                - r((m4 - 3) * (ni + 2 * m3 + 3), 6))
            .min(i(ni - 1))
                + i(4 * ex);
            (left, right, length)
        }
        _ => {
            return Err(Error::invalid(format!(
                "closed forms exist only for slack m in {{0, 1}}, got {m}"
            )))
        }
    };
    Ok(DegreeSegment {
        n,
        m,
        left: exact(left, "left end", n)?,
        right: exact(right, "right end", n)?,
        length: exact(length, "length", n)?,
    })
}

/// Closed form in general; a direct sweep for `n ∈ {5, 9}`.
pub fn degree_segment(n: u64, m: u64) -> Result<DegreeSegment> {
    if m > 1 {
        return Err(Error::invalid(format!("slack m must be 0 or 1, got {m}")));
    }
    if n == 5 || n == 9 {
        degree_segment_sweep(n, m)
    } else {
        degree_segment_closed_form(n, m)
    }
}

/// Majority domination number over `G(n|d)`: `2 hmin(n,d) - n`.
pub fn gamma_maj(n: u64, d: u64) -> Result<i64> {
    Ok(2 * hmin(n, d)? as i64 - n as i64)
}

pub fn gamma_maj_global(n: u64) -> Result<i64> {
    check_odd_order(n)?;
    let ni = n as i64;
    Ok((2 + ni % 4 - ni) / 2 + 2 * order_indicator(n, &[5, 9]))
}

/// `-(n/2)(d-1)/d`.
pub fn henning_holm_bound(n: u64, d: u64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    Ok(-rat(n * (d - 1), 2 * d))
}

/// `gamma >= (n+1)/2 · (d+1)/d - n`, the global support inequality in weight form.
pub fn global_gamma_bound(n: u64, d: u64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    Ok(rat((n + 1) * (d + 1), 2 * d) - Rational::from_integer(n as i64))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaComparison {
    pub gamma_maj: i64,
    #[serde(with = "ratio_text")]
    pub henning_holm: Rational,
    #[serde(with = "ratio_text")]
    pub global_form: Rational,
    /// True when the exact value lies strictly above the Henning-Holm bound.
    pub exceeds_henning_holm: bool,
}

pub fn compare_gamma_bounds(n: u64, d: u64) -> Result<GammaComparison> {
    let gamma_maj = gamma_maj(n, d)?;
    let henning_holm = henning_holm_bound(n, d)?;
    Ok(GammaComparison {
        gamma_maj,
        exceeds_henning_holm: Rational::from_integer(gamma_maj) > henning_holm,
        henning_holm,
        global_form: global_gamma_bound(n, d)?,
    })
}

/// Every quantity behind a classification, for audit output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    pub n: u64,
    pub d: u64,
    pub h: Option<u64>,
    pub status: Option<ClassStatus>,
    pub q: u64,
    pub b: u64,
    pub low_degree: bool,
    /// `t` of the witness shape: `n = 2d+1+2t` (low) or `n = 2h+1+2t` at `h = hmin` (high).
    pub t: Option<u64>,
    pub exceptional: bool,
    #[serde(with = "ratio_text")]
    pub global_bound: Rational,
    pub local_bound: u64,
    pub hmin: u64,
    pub hmax: u64,
    pub gap: GapReport,
    pub gamma: GammaComparison,
}

pub fn summarize(n: u64, d: u64, h: Option<u64>) -> Result<ClassSummary> {
    let lo = hmin(n, d)?;
    let status = h.map(|h| classify(n, d, h)).transpose()?;
    let q = (n + 1) / 2;
    let low_degree = d < q;
    let t = if low_degree {
        (n >= 2 * d + 1).then(|| (n - 2 * d - 1) / 2)
    } else {
        (n >= 2 * lo + 1).then(|| (n - 2 * lo - 1) / 2)
    };
    Ok(ClassSummary {
        n,
        d,
        h,
        status,
        q,
        b: (d + 1) / 2,
        low_degree,
        t,
        exceptional: is_exceptional(n, d),
        global_bound: global_bound(n, d)?,
        local_bound: local_bound(d)?,
        hmin: lo,
        hmax: n - lo,
        gap: security_gap(n, d)?,
        gamma: compare_gamma_bounds(n, d)?,
    })
}
