//! Extremal witnesses: an approving configuration with exactly `hmin(n,d)`
//! happy vertices for every odd pair `(n, d)`, and dually a disapproving one
//! with `hmax(n,d)` happy vertices.
//!
//! Block notation: `H_w` is `w` happy vertices, `S_w` is `w` sad vertices.
//! Inner blocks are consecutive-offset circulants unless stated otherwise.

use serde::Serialize;

use crate::classifier;
use crate::error::{Error, Result};
use crate::graph::{
    check_order_degree, disjoint_union, double_join, hybrid_join, join, Configuration, LoopGraph,
    Opinion,
};
use crate::oracle::{self, EnumerationBudget};
use crate::voting;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// `d = n`: the complete graph is the only member.
    Complete,
    HighCase1,
    HighCase2,
    HighCase3,
    Special53,
    Special95,
    Low,
}

fn circulant_block(n: usize, degree: usize, opinion: Opinion) -> Result<Configuration> {
    Ok(Configuration::uniform(
        LoopGraph::circulant(n, degree)?,
        opinion,
    ))
}

/// `H_h ⊐ S_{h+2t+1}` in `G(2h+1+2t | 2h-1 | h)`, for `0 <= t <= (h-3)/2`.
///
/// Inner degrees are `h-2t-2` (happy block) and `h-1` (sad block). Every sad
/// vertex sees `h` happy neighbors out of `2h-1`, so the proponents are
/// exactly the sad vertices.
pub fn build_high_case1(h: usize, t: usize) -> Result<Configuration> {
    if h < 3 || 2 * t + 3 > h {
        return Err(Error::invalid(format!(
            "high-degree case 1 needs h >= 3 and 0 <= t <= (h-3)/2, got h = {h}, t = {t}"
        )));
    }
    let happy = circulant_block(h, h - 2 * t - 2, Opinion::Happy)?;
    let sad = circulant_block(h + 2 * t + 1, h - 1, Opinion::Sad)?;
    Ok(join(&happy, &sad))
}

/// `S_{2t-h+3} ≡ S_{2h-2} ≡ H_h` in `G(2h+1+2t | 2h-1 | h)`, for
/// `(h-3)/2 < t <= h-3`. Outer blocks carry loops only; the middle block is
/// `2(h-t-2)`-regular and is the whole proponent set.
pub fn build_high_case2(h: usize, t: usize) -> Result<Configuration> {
    if h < 4 || 2 * t + 3 <= h || t + 3 > h {
        return Err(Error::invalid(format!(
            "high-degree case 2 needs (h-3)/2 < t <= h-3, got h = {h}, t = {t}"
        )));
    }
    let outer = Configuration::sad_block(LoopGraph::loops_only(2 * t + 3 - h));
    let middle = circulant_block(2 * h - 2, 2 * (h - t - 2), Opinion::Sad)?;
    let happy = Configuration::happy_block(LoopGraph::loops_only(h));
    Ok(double_join(&outer, &middle, &happy))
}

/// `S_{2h-2} ≻ S_{h-1} ≡ H_h` in `G(4h-3 | 2h-1 | h)` for `h > 3`.
///
/// `S_{2h-2}` and `H_h` are complete; inside `S_{h-1}` each vertex misses
/// exactly two others, i.e. degree `h-3`. Proponents are `H_h ∪ S_{h-1}`,
/// which is exactly `(n+1)/2` vertices.
pub fn build_high_case3(h: usize) -> Result<Configuration> {
    if h <= 3 {
        return Err(Error::invalid(format!(
            "G(4h-3|2h-1|h) has no approving member for h in {{2, 3}} and is degenerate for h = 1; got h = {h}"
        )));
    }
    let left = Configuration::sad_block(LoopGraph::complete(2 * h - 2));
    let middle = circulant_block(h - 1, h - 3, Opinion::Sad)?;
    let happy = Configuration::happy_block(LoopGraph::complete(h));
    hybrid_join(&left, &middle, &happy)
}

/// Witnesses for the two exceptional pairs, each with `hmin` happy vertices.
///
/// `(5,3)`: the 5-cycle with loops, vertices 0..3 happy. `(9,5)`: the first
/// approving member of `G(9|5|4)` in lexicographic enumeration order with
/// happy set `{0,1,2,3}`.
pub fn build_special(n: usize, d: usize) -> Result<Configuration> {
    match (n, d) {
        (5, 3) => Configuration::with_happy_prefix(LoopGraph::circulant(5, 3)?, 3),
        (9, 5) => {
            let budget = EnumerationBudget::find_witness();
            oracle::find_approving_witness(9, 5, 4, &budget)?
                .ok_or_else(|| Error::invalid("no approving member of G(9|5|4) found"))
        }
        _ => Err(Error::invalid(format!(
            "special witnesses exist only for (n, d) in {{(5,3), (9,5)}}, got ({n}, {d})"
        ))),
    }
}

/// Evenly spread `k` marks over a cycle of length `q`: mark `j` sits at
/// `⌊j q / k⌋`, so consecutive gaps differ by at most one.
fn spread_marks(q: usize, k: usize) -> Vec<bool> {
    let mut marked = vec![false; q];
    for j in 0..k {
        marked[j * q / k] = true;
    }
    marked
}

/// `[S_{d+t}  C_{d+t+1}]` in `G(2d+1+2t | d | h)` for low degree `d < (n+1)/2`.
///
/// The sad component is a `d`-regular circulant. In the circulant `C_q`
/// (`q = (n+1)/2`), `h - s'` happy vertices are spread evenly around the
/// cycle (`s' = q - h`); the remaining `2s'` positions alternate happy, sad.
/// Every window of `d` consecutive positions then holds a happy majority, so
/// all of `C_q` are proponents.
pub fn build_low(n: usize, d: usize, h: usize) -> Result<Configuration> {
    check_order_degree(n as u64, d as u64)?;
    let q = (n + 1) / 2;
    if d >= q {
        return Err(Error::invalid(format!(
            "low-degree construction needs d < (n+1)/2, got d = {d}, (n+1)/2 = {q}"
        )));
    }
    if h * 4 * d < (n + 1) * (d + 1) {
        return Err(Error::invalid(format!(
            "global support inequality h >= (n+1)(d+1)/(4d) fails: h = {h}, (n+1)(d+1)/(4d) = {}",
            classifier::global_bound(n as u64, d as u64)?
        )));
    }
    if h > q {
        return Err(Error::invalid(format!(
            "low-degree construction needs h <= (n+1)/2, got h = {h}, (n+1)/2 = {q}"
        )));
    }
    let sad_component = circulant_block(q - 1, d, Opinion::Sad)?;

    let s_prime = q - h;
    let extra = h - s_prime;
    let marked = spread_marks(q, extra);
    let mut opinions = Vec::with_capacity(q);
    let mut alternate = Opinion::Happy;
    for &m in &marked {
        if m {
            opinions.push(Opinion::Happy);
        } else {
            opinions.push(alternate);
            alternate = alternate.flipped();
        }
    }
    let cycle = Configuration::new(LoopGraph::circulant(q, d)?, opinions)?;
    Ok(disjoint_union(&sad_component, &cycle))
}

/// Which witness shape `build_min_approving` uses for `(n, d)`.
pub fn min_approving_case(n: usize, d: usize) -> Result<CaseTag> {
    check_order_degree(n as u64, d as u64)?;
    if d == n {
        return Ok(CaseTag::Complete);
    }
    match (n, d) {
        (5, 3) => return Ok(CaseTag::Special53),
        (9, 5) => return Ok(CaseTag::Special95),
        _ => {}
    }
    if d < (n + 1) / 2 {
        return Ok(CaseTag::Low);
    }
    let h = (d + 1) / 2;
    let t = (n - 2 * h - 1) / 2;
    // splits [0, h-2] into [0, ⌊(h-3)/2⌋], [⌊(h-3)/2⌋+1, h-3], {h-2}
    Ok(if 2 * t + 3 <= h {
        CaseTag::HighCase1
    } else if t + 3 <= h {
        CaseTag::HighCase2
    } else {
        CaseTag::HighCase3
    })
}

/// Human-readable block structure of the minimum approving witness.
pub fn witness_shape(n: usize, d: usize) -> Result<String> {
    let h = (d + 1) / 2;
    let t = n.saturating_sub(2 * h + 1) / 2;
    let q = (n + 1) / 2;
    Ok(match min_approving_case(n, d)? {
        CaseTag::Complete => format!("complete graph K_{n} with loops, {h} happy"),
        CaseTag::Special53 => "5-cycle with loops, 3 happy".to_string(),
        CaseTag::Special95 => "searched 5-regular graph on 9 vertices, 4 happy".to_string(),
        CaseTag::Low => format!("[S_{} C_{q}] (disjoint union)", q - 1),
        CaseTag::HighCase1 => format!("H_{h} join S_{}", h + 2 * t + 1),
        CaseTag::HighCase2 => format!(
            "S_{} = S_{} = H_{h} (double join)",
            2 * t + 3 - h,
            2 * h - 2
        ),
        CaseTag::HighCase3 => format!("S_{} >- S_{} = H_{h} (hybrid join)", 2 * h - 2, h - 1),
    })
}

/// An approving member of `G(n | d | hmin(n,d))`.
pub fn build_min_approving(n: usize, d: usize) -> Result<Configuration> {
    let case = min_approving_case(n, d)?;
    let h = (d + 1) / 2;
    let t = n.saturating_sub(2 * h + 1) / 2;
    match case {
        CaseTag::Complete => Configuration::with_happy_prefix(LoopGraph::complete(n), h),
        CaseTag::Special53 | CaseTag::Special95 => build_special(n, d),
        CaseTag::Low => build_low(n, d, classifier::hmin(n as u64, d as u64)? as usize),
        CaseTag::HighCase1 => build_high_case1(h, t),
        CaseTag::HighCase2 => build_high_case2(h, t),
        CaseTag::HighCase3 => build_high_case3(h),
    }
}

/// A disapproving member of `G(n | d | hmax(n,d))`: the minimum approving
/// witness with every opinion flipped.
pub fn build_max_disapproving(n: usize, d: usize) -> Result<Configuration> {
    Ok(voting::negate(&build_min_approving(n, d)?))
}

fn check_mixed_band(n: usize, d: usize, h: usize) -> Result<()> {
    let lo = classifier::hmin(n as u64, d as u64)? as usize;
    let hi = n - lo;
    if h < lo {
        return Err(Error::invalid(format!(
            "G({n}|{d}|{h}) is uniformly disapproving: h = {h} < hmin = {lo}"
        )));
    }
    if h > hi {
        return Err(Error::invalid(format!(
            "G({n}|{d}|{h}) is uniformly approving: h = {h} > hmax = {hi}"
        )));
    }
    Ok(())
}

/// Approving member with `h` happy vertices, `hmin <= h <= hmax`: turns the
/// first sad vertices of the minimum witness happy. Adding happy vertices
/// never removes a proponent.
pub fn build_approving_with(n: usize, d: usize, h: usize) -> Result<Configuration> {
    check_mixed_band(n, d, h)?;
    let base = build_min_approving(n, d)?;
    let mut todo = h - base.happy_count();
    Ok(base.map_opinions(|_, o| {
        if o == Opinion::Sad && todo > 0 {
            todo -= 1;
            Opinion::Happy
        } else {
            o
        }
    }))
}

/// Disapproving member with `h` happy vertices, `hmin <= h <= hmax`.
pub fn build_disapproving_with(n: usize, d: usize, h: usize) -> Result<Configuration> {
    check_mixed_band(n, d, h)?;
    let base = build_max_disapproving(n, d)?;
    let mut todo = base.happy_count() - h;
    Ok(base.map_opinions(|_, o| {
        if o == Opinion::Happy && todo > 0 {
            todo -= 1;
            Opinion::Sad
        } else {
            o
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::voting::{is_approving, proponents};

    fn assert_member(c: &Configuration, n: usize, d: usize, h: usize) {
        assert_eq!(c.order(), n);
        assert_eq!(c.graph().regular_degree(), Some(d));
        assert_eq!(c.happy_count(), h);
        assert!((0..n).all(|v| c.graph().has_edge(v, v)));
    }

    #[test]
    fn case1_examples() {
        let c = build_high_case1(4, 0).unwrap();
        assert_member(&c, 9, 7, 4);
        let r = proponents(&c);
        assert!(r.approving);
        assert_eq!(r.proponents, c.sad_vertices().collect::<Vec<_>>());
        let c = build_high_case1(3, 0).unwrap();
        assert_member(&c, 7, 5, 3);
        assert!(is_approving(&c));
        assert!(build_high_case1(2, 0).is_err());
        assert!(build_high_case1(5, 2).is_err());
    }

    #[test]
    fn case2_examples() {
        let c = build_high_case2(4, 1).unwrap();
        assert_member(&c, 11, 7, 4);
        let r = proponents(&c);
        assert!(r.approving);
        assert_eq!(r.p, 6);
        assert!(r.proponents.iter().all(|&v| !c.is_happy(v)));
        assert!(r.p < c.sad_count());
        let c = build_high_case2(5, 2).unwrap();
        assert_member(&c, 15, 9, 5);
        assert!(is_approving(&c));
        assert!(build_high_case2(3, 0).is_err());
        assert!(build_high_case2(5, 1).is_err());
        assert!(build_high_case2(5, 3).is_err());
    }

    #[test]
    fn case3_examples() {
        let c = build_high_case3(4).unwrap();
        assert_member(&c, 13, 7, 4);
        assert_eq!(proponents(&c).p, 7);
        let c = build_high_case3(5).unwrap();
        assert_member(&c, 17, 9, 5);
        assert_eq!(proponents(&c).p, 9);
        assert!(build_high_case3(3).is_err());
        assert!(build_high_case3(2).is_err());
    }

    #[test]
    fn special_witnesses() {
        let c = build_special(5, 3).unwrap();
        assert_member(&c, 5, 3, 3);
        assert!(is_approving(&c));
        let c = build_special(9, 5).unwrap();
        assert_member(&c, 9, 5, 4);
        assert!(proponents(&c).p >= 5);
        assert!(build_special(7, 3).is_err());
    }

    #[test]
    fn low_examples() {
        let c = build_low(81, 9, 23).unwrap();
        assert_member(&c, 81, 9, 23);
        let r = proponents(&c);
        assert!(r.approving);
        assert_eq!(r.proponents, (40..81).collect::<Vec<_>>());

        let c = build_low(7, 3, 3).unwrap();
        assert_member(&c, 7, 3, 3);
        assert!(is_approving(&c));

        let err = build_low(81, 9, 22).unwrap_err().to_string();
        assert!(err.contains("global support inequality"), "{err}");
        assert!(build_low(9, 5, 4).is_err());
        assert!(build_low(81, 9, 42).is_err());
    }

    #[test]
    fn spread_gaps_differ_by_at_most_one() {
        for q in 1..60 {
            for k in 1..=q {
                let pos: Vec<_> = spread_marks(q, k)
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &m)| m.then_some(i))
                    .collect();
                assert_eq!(pos.len(), k);
                let gaps: Vec<_> = (0..k)
                    .map(|j| (pos[(j + 1) % k] + q - pos[j] - 1) % q + 1)
                    .collect();
                let (lo, hi) = (gaps.iter().min().unwrap(), gaps.iter().max().unwrap());
                assert!(hi - lo <= 1, "q={q} k={k} gaps={gaps:?}");
            }
        }
    }

    #[test]
    fn dispatcher_cases() {
        assert_eq!(min_approving_case(1, 1).unwrap(), CaseTag::Complete);
        assert_eq!(min_approving_case(7, 7).unwrap(), CaseTag::Complete);
        assert_eq!(min_approving_case(5, 3).unwrap(), CaseTag::Special53);
        assert_eq!(min_approving_case(9, 5).unwrap(), CaseTag::Special95);
        assert_eq!(min_approving_case(9, 7).unwrap(), CaseTag::HighCase1);
        assert_eq!(min_approving_case(11, 7).unwrap(), CaseTag::HighCase2);
        assert_eq!(min_approving_case(13, 7).unwrap(), CaseTag::HighCase3);
        assert_eq!(min_approving_case(7, 3).unwrap(), CaseTag::Low);
        assert_eq!(min_approving_case(9, 1).unwrap(), CaseTag::Low);
        assert!(min_approving_case(8, 3).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(
            witness_shape(81, 9).unwrap(),
            "[S_40 C_41] (disjoint union)"
        );
        assert_eq!(witness_shape(9, 7).unwrap(), "H_4 join S_5");
        assert_eq!(
            witness_shape(13, 7).unwrap(),
            "S_6 >- S_3 = H_4 (hybrid join)"
        );
    }

    #[test]
    fn min_and_max_witness_examples() {
        for (n, d, h) in [(5, 3, 3), (9, 5, 4), (47, 25, 13)] {
            let c = build_min_approving(n, d).unwrap();
            assert_member(&c, n, d, h);
            assert!(is_approving(&c));
        }
        for (n, d, h) in [(5, 3, 2), (9, 5, 5), (81, 9, 58)] {
            let c = build_max_disapproving(n, d).unwrap();
            assert_member(&c, n, d, h);
            assert!(!is_approving(&c));
        }
    }

    #[test]
    fn intermediate_happy_counts() {
        for h in 23..=58 {
            let a = build_approving_with(81, 9, h).unwrap();
            assert_member(&a, 81, 9, h);
            assert!(is_approving(&a));
            let b = build_disapproving_with(81, 9, h).unwrap();
            assert_member(&b, 81, 9, h);
            assert!(!is_approving(&b));
        }
        let err = build_approving_with(81, 9, 22).unwrap_err().to_string();
        assert!(err.contains("uniformly disapproving"));
        let err = build_disapproving_with(81, 9, 59).unwrap_err().to_string();
        assert!(err.contains("uniformly approving"));
    }
}
