//! Condition-checked descriptions of the Picard group, Picard variety, first
//! and second homotopy groups and the fibration structure of the moduli space
//! at a given `alpha`, for `0 < k < n`.
//!
//! Every populated entry lists the hypotheses that were verified for it; an
//! entry whose hypotheses fail records the failed condition instead.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exact::Rational;
use crate::moduli::{alpha_t, ModuliError, SystemType};

/// Flag set for genus 2, `k = n - 2`, `d` even, where the results may fail.
pub const EXCEPTION_G2_EVEN: &str = "g2_k_n-2_d_even_unknown";

/// Structured description of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Group {
    Integers,
    FreeAbelian { rank: i64 },
    Cyclic { order: i64 },
    Product { factors: Vec<Group> },
    /// `0 -> kernel -> G -> quotient -> 0`, not known to split.
    Extension { kernel: Box<Group>, quotient: Box<Group> },
    /// `Pic(M(rank, degree))`; for rank 1 this is `Pic(J^degree)`.
    PicardOfModuli { rank: i64, degree: i64 },
    /// The Jacobian `J(C)` as an abelian variety.
    Jacobian,
    /// `pi_index(Gr(k, n))`.
    GrassmannianHomotopy { index: u32, k: i64, n: i64 },
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Integers => f.write_str("Z"),
            Group::FreeAbelian { rank } => write!(f, "Z^{rank}"),
            Group::Cyclic { order } => write!(f, "Z_{order}"),
            Group::Product { factors } => {
                for (i, g) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            Group::Extension { kernel, quotient } => {
                write!(f, "extension of {quotient} by {kernel}")
            }
            Group::PicardOfModuli { rank: 1, degree } => write!(f, "Pic(J^{degree})"),
            Group::PicardOfModuli { rank, degree } => write!(f, "Pic(M({rank},{degree}))"),
            Group::Jacobian => f.write_str("J(C)"),
            Group::GrassmannianHomotopy { index, k, n } => write!(f, "pi_{index}(Gr({k},{n}))"),
        }
    }
}

/// One report field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Entry {
    Known {
        group: Group,
        text: String,
        hypotheses: Vec<String>,
    },
    Unknown {
        failed: String,
    },
}

impl Entry {
    fn known(group: Group, hypotheses: &[&str]) -> Entry {
        Entry::Known {
            text: group.to_string(),
            group,
            hypotheses: hypotheses.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn unknown(failed: impl Into<String>) -> Entry {
        Entry::Unknown { failed: failed.into() }
    }

    pub fn group(&self) -> Option<&Group> {
        match self {
            Entry::Known { group, .. } => Some(group),
            Entry::Unknown { .. } => None,
        }
    }

    pub fn text(&self) -> Option<&str> {
        match self {
            Entry::Known { text, .. } => Some(text),
            Entry::Unknown { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Space {
    /// `J^degree`
    Jacobian { degree: i64 },
    /// `Gr(k, n)`
    Grassmannian { k: i64, n: i64 },
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Jacobian { degree } => write!(f, "J^{degree}"),
            Space::Grassmannian { k, n } => write!(f, "Gr({k},{n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fibration {
    pub base: Space,
    pub fibre: Space,
}

/// A statement that is expected but not proven; only emitted on request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conjecture {
    pub field: String,
    pub group: Group,
    pub text: String,
    pub conjecture: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyReport {
    #[serde(rename = "type")]
    pub system: SystemType,
    pub alpha: Rational,
    pub applicable: bool,
    pub reason: Option<String>,
    /// `gcd(n - k, d)` when `d > 0`.
    pub p: Option<i64>,
    pub pic: Entry,
    pub pic0: Entry,
    pub pi1: Entry,
    pub pi2: Entry,
    pub fibration: Option<Fibration>,
    pub brill_noether: Option<String>,
    pub exceptions: Vec<String>,
    pub conjectures: Vec<Conjecture>,
}

/// Report without conjectural content.
pub fn topology_report(s: &SystemType, alpha: &Rational) -> Result<TopologyReport, ModuliError> {
    topology_report_with(s, alpha, false)
}

/// Report; with `conjectures` set, the expected but unproven form of `pi_2`
/// for `k <= n - 2` is attached, marked as a conjecture.
pub fn topology_report_with(
    s: &SystemType,
    alpha: &Rational,
    conjectures: bool,
) -> Result<TopologyReport, ModuliError> {
    s.require_k_below_n()?;
    let SystemType { n, d, k, g } = *s;

    let mut report = TopologyReport {
        system: *s,
        alpha: alpha.clone(),
        applicable: false,
        reason: None,
        p: (d > 0).then(|| (n - k).gcd(&d)),
        pic: Entry::unknown("not evaluated"),
        pic0: Entry::unknown("not evaluated"),
        pi1: Entry::unknown("not evaluated"),
        pi2: Entry::unknown("not evaluated"),
        fibration: None,
        brill_noether: (d > 0 && n - g <= d && d < n)
            .then(|| format!("G^{}_{}", d + g - n - 1, d + 2 * g - 2)),
        exceptions: Vec::new(),
        conjectures: Vec::new(),
    };

    if let Some(failed) = failed_precondition(s, alpha)? {
        report.reason = Some(failed.clone());
        report.set_all(Entry::unknown(failed));
        return Ok(report);
    }
    report.applicable = true;

    if g == 2 && k == n - 2 && d % 2 == 0 {
        report.exceptions.push(EXCEPTION_G2_EVEN.to_string());
        report.set_all(Entry::unknown("g = 2, k = n - 2 and d even is not covered"));
        return Ok(report);
    }

    let on_bound = s.on_section_bound();
    let bound_hyp = if on_bound {
        "k = n + (d - n)/g"
    } else {
        "k < n + (d - n)/g"
    };
    let range_hyp = "alpha_T < alpha < d/(n - k)";
    let pic_m = Group::PicardOfModuli { rank: n - k, degree: d };
    let with_z = |grp: Group| {
        if on_bound {
            grp
        } else {
            Group::Product { factors: vec![grp, Group::Integers] }
        }
    };

    report.pic0 = Entry::known(Group::Jacobian, &["d > 0", range_hyp, "k <= n + (d - n)/g"]);
    report.pi1 = Entry::known(
        Group::FreeAbelian { rank: 2 * g },
        &["d > 0", range_hyp, "k <= n + (d - n)/g", "pi_1 = H_1(C, Z)"],
    );

    if k == n - 1 {
        let big_n = d + g - 1;
        report.fibration = Some(Fibration {
            base: Space::Jacobian { degree: d },
            fibre: Space::Grassmannian { k: n - 1, n: big_n },
        });
        report.pic = Entry::known(with_z(pic_m), &["k = n - 1", range_hyp, bound_hyp]);
        report.pi2 = Entry::known(
            Group::GrassmannianHomotopy { index: 2, k: n - 1, n: big_n },
            &["k = n - 1", range_hyp, "d >= max{1, n - g}"],
        );
        return Ok(report);
    }

    let p = report.p.expect("d > 0 checked above");
    if p == 1 {
        let coprime = "gcd(n - k, d) = 1";
        report.pic = Entry::known(with_z(pic_m), &[coprime, range_hyp, bound_hyp]);
        let pi2 = if on_bound {
            Group::Integers
        } else {
            Group::Product { factors: vec![Group::Integers, Group::Integers] }
        };
        report.pi2 = Entry::known(pi2, &[coprime, "0 < k <= n - 2", range_hyp, bound_hyp]);
    } else if (n - k - 1) * (g - 1) >= 2 {
        let hyp = [
            "gcd(n - k, d) > 1",
            "(n - k - 1)(g - 1) >= 2",
            range_hyp,
            bound_hyp,
        ];
        report.pic = Entry::known(with_z(pic_m), &hyp);
        let z_zp = Group::Product {
            factors: vec![Group::Integers, Group::Cyclic { order: p }],
        };
        let pi2 = if on_bound {
            z_zp
        } else {
            Group::Extension {
                kernel: Box::new(Group::Integers),
                quotient: Box::new(z_zp),
            }
        };
        report.pi2 = Entry::known(pi2, &hyp);
    } else {
        let failed = "gcd(n - k, d) > 1 needs (n - k - 1)(g - 1) >= 2";
        report.pic = Entry::unknown(failed);
        report.pi2 = Entry::unknown(failed);
    }

    if conjectures {
        let q = n.gcd(&d).gcd(&k);
        let mut factors = vec![Group::Integers];
        if !on_bound {
            factors.push(Group::Integers);
        }
        if q > 1 {
            factors.push(Group::Cyclic { order: q });
        }
        let group = if factors.len() == 1 {
            Group::Integers
        } else {
            Group::Product { factors }
        };
        report.conjectures.push(Conjecture {
            field: "pi2".to_string(),
            text: group.to_string(),
            group,
            conjecture: true,
        });
    }
    Ok(report)
}

impl TopologyReport {
    fn set_all(&mut self, entry: Entry) {
        self.pic = entry.clone();
        self.pic0 = entry.clone();
        self.pi1 = entry.clone();
        self.pi2 = entry;
    }
}

/// The first failed condition among `d > 0`, the open range for `alpha`
/// and non-emptiness, or `None` if all hold.
fn failed_precondition(s: &SystemType, alpha: &Rational) -> Result<Option<String>, ModuliError> {
    if s.d <= 0 {
        return Ok(Some(format!("d > 0 fails (d = {})", s.d)));
    }
    let lo = alpha_t(s)?;
    let hi = s.alpha_max()?;
    if alpha == &lo || alpha == &hi {
        return Ok(Some(format!(
            "boundary value: alpha = {alpha} is an endpoint of ({lo}, {hi})"
        )));
    }
    if alpha < &lo || alpha > &hi {
        return Ok(Some(format!("alpha = {alpha} lies outside ({lo}, {hi})")));
    }
    if !s.satisfies_section_bound() {
        return Ok(Some(format!(
            "k <= n + (d - n)/g fails ({} > {}): moduli space is empty",
            s.k,
            s.section_bound()
        )));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(n: i64, d: i64, k: i64, g: i64) -> SystemType {
        SystemType::new(n, d, k, g).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn rank_three_k_two_fibres_over_jacobian() {
        let rep = topology_report(&st(3, 5, 2, 2), &r(3, 1)).unwrap();
        assert!(rep.applicable);
        assert_eq!(
            rep.fibration,
            Some(Fibration {
                base: Space::Jacobian { degree: 5 },
                fibre: Space::Grassmannian { k: 2, n: 6 },
            })
        );
        assert_eq!(rep.pi1.text(), Some("Z^4"));
        assert_eq!(rep.pi2.text(), Some("pi_2(Gr(2,6))"));
        assert_eq!(rep.pic.text(), Some("Pic(J^5) x Z"));
        assert_eq!(rep.pic0.group(), Some(&Group::Jacobian));
    }

    #[test]
    fn boundary_alpha_is_refused() {
        // alpha_T = 2 here
        let rep = topology_report(&st(3, 5, 2, 2), &r(2, 1)).unwrap();
        assert!(!rep.applicable);
        assert!(rep.reason.as_deref().unwrap().starts_with("boundary value"));
        assert!(matches!(rep.pic, Entry::Unknown { .. }));
        let rep = topology_report(&st(3, 5, 2, 2), &r(5, 1)).unwrap();
        assert!(rep.reason.as_deref().unwrap().starts_with("boundary value"));
        let rep = topology_report(&st(3, 5, 2, 2), &r(7, 1)).unwrap();
        assert!(!rep.applicable);
        assert!(rep.fibration.is_none());
    }

    #[test]
    fn coprime_rank_two_quotient() {
        let rep = topology_report(&st(4, 7, 2, 2), &r(3, 1)).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.p, Some(1));
        assert_eq!(rep.pic.text(), Some("Pic(M(2,7)) x Z"));
        assert_eq!(
            rep.pi2.group(),
            Some(&Group::Product { factors: vec![Group::Integers, Group::Integers] })
        );
        assert_eq!(rep.pi1.text(), Some("Z^4"));
        assert!(rep.exceptions.is_empty());
        assert!(rep.conjectures.is_empty());
    }

    #[test]
    fn genus_two_even_degree_exception() {
        let rep = topology_report(&st(4, 6, 2, 2), &r(2, 1)).unwrap();
        assert_eq!(rep.exceptions, vec![EXCEPTION_G2_EVEN.to_string()]);
        for e in [&rep.pic, &rep.pic0, &rep.pi1, &rep.pi2] {
            assert!(matches!(e, Entry::Unknown { .. }));
        }
    }

    #[test]
    fn brill_noether_identification() {
        let rep = topology_report(&st(4, 3, 3, 2), &r(1, 1)).unwrap();
        assert_eq!(rep.brill_noether.as_deref(), Some("G^0_5"));
        let rep = topology_report(&st(3, 2, 2, 2), &r(1, 1)).unwrap();
        assert_eq!(rep.brill_noether.as_deref(), Some("G^0_4"));
        let rep = topology_report(&st(5, 2, 4, 3), &r(1, 1)).unwrap();
        assert_eq!(rep.brill_noether.as_deref(), Some("G^-1_6"));
        // d >= n or d < n - g: no identification
        assert!(topology_report(&st(3, 5, 2, 2), &r(3, 1)).unwrap().brill_noether.is_none());
        assert!(topology_report(&st(6, 2, 5, 2), &r(1, 1)).unwrap().brill_noether.is_none());
    }

    #[test]
    fn non_coprime_gives_extension() {
        // n - k = 3, d = 9, g = 3: p = 3, (3-1)(3-1) = 4 >= 2
        let rep = topology_report_with(&st(5, 9, 2, 3), &r(2, 1), true).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.p, Some(3));
        assert_eq!(rep.pi2.text(), Some("extension of Z x Z_3 by Z"));
        assert_eq!(rep.pic.text(), Some("Pic(M(3,9)) x Z"));
        assert_eq!(rep.conjectures.len(), 1);
        assert!(rep.conjectures[0].conjecture);
        // gcd(5, 9, 2) = 1
        assert_eq!(rep.conjectures[0].text, "Z x Z");
    }

    #[test]
    fn section_bound_drops_integer_factor() {
        // 3 = 5 + (1 - 5)/2
        let s = st(5, 1, 3, 2);
        assert!(s.on_section_bound());
        let rep = topology_report(&s, &r(1, 4)).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.pic.text(), Some("Pic(M(2,1))"));
        assert_eq!(rep.pi2.group(), Some(&Group::Integers));
        // k = n - 1 on the bound: d = n - g
        let s = st(4, 2, 3, 2);
        assert!(s.on_section_bound());
        let rep = topology_report(&s, &r(1, 1)).unwrap();
        assert_eq!(rep.pic.text(), Some("Pic(J^2)"));
    }

    #[test]
    fn empty_space_is_not_applicable() {
        let rep = topology_report(&st(6, 1, 4, 2), &r(1, 4)).unwrap();
        assert!(!rep.applicable);
        assert!(rep.reason.unwrap().contains("empty"));
    }

    #[test]
    fn rejects_k_outside_range() {
        assert!(topology_report(&st(3, 5, 3, 2), &r(1, 1)).is_err());
        assert!(topology_report(&st(3, 5, 0, 2), &r(1, 1)).is_err());
    }

    #[test]
    fn invariants_over_grid() {
        for g in 2..=4 {
            for n in 2..=7 {
                for k in 1..n {
                    for d in 1..=16 {
                        let s = st(n, d, k, g);
                        let lo = alpha_t(&s).unwrap();
                        let hi = s.alpha_max().unwrap();
                        let alpha = lo.midpoint(&hi);
                        let a = topology_report_with(&s, &alpha, true).unwrap();
                        let b = topology_report_with(&s, &alpha, true).unwrap();
                        assert_eq!(a, b);
                        assert_eq!(a.p, Some((n - k).gcd(&d)));
                        if let Some(Group::Product { factors }) = a.pic.group() {
                            if factors.contains(&Group::Integers) {
                                assert!(!s.on_section_bound() && s.satisfies_section_bound());
                            }
                        } else if let Some(Group::PicardOfModuli { .. }) = a.pic.group() {
                            assert!(s.on_section_bound());
                        }
                        if let Some(text) = a.pi2.text() {
                            let p = (n - k).gcd(&d);
                            assert_eq!(text.contains("Z_"), p > 1 && k <= n - 2, "{s:?}");
                            if k == n - 1 {
                                assert!(text.starts_with("pi_2(Gr("));
                            }
                        }
                        if !a.conjectures.is_empty() {
                            assert!(k <= n - 2);
                        }
                        let back: TopologyReport =
                            serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
                        assert_eq!(back, a);
                    }
                }
            }
        }
    }
}
