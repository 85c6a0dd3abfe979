//! The sets `F1`, `F2`, `F3`, `G = F1 ∩ (F2 ∪ F3)` and the indicator
//! functional `nu` (0 on `G`, 1 elsewhere).

use std::fmt;

use serde::Serialize;

use super::function::OmegaFunction;
use super::lattice::{attained_max, leq};
use crate::rational::{one, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipFlags {
    /// `f <= f_1`.
    pub in_f1: bool,
    /// `max f <= f(p)`.
    pub in_f2: bool,
    /// `max f < 1`.
    pub in_f3: bool,
    pub in_g: bool,
}

pub fn membership(f: &OmegaFunction) -> MembershipFlags {
    let f1 = OmegaFunction::make_f(1).expect("f_1 is valid");
    let max = attained_max(f).value;
    let in_f1 = leq(f, &f1);
    let in_f2 = max <= *f.v_p();
    let in_f3 = max < one();
    MembershipFlags {
        in_f1,
        in_f2,
        in_f3,
        in_g: in_f1 && (in_f2 || in_f3),
    }
}

pub fn nu_from_flags(flags: MembershipFlags) -> Rational {
    if flags.in_g {
        crate::rational::zero()
    } else {
        one()
    }
}

pub fn nu_eval(f: &OmegaFunction) -> Rational {
    nu_from_flags(membership(f))
}

/// The case of the maxitivity argument a comonotone pair falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProofBranch {
    /// Both in `G`, both in `F2`.
    BothF2,
    /// Both in `G`, one in `F2` and the other in `F3`.
    F2F3,
    /// Both in `G`, both in `F3`.
    BothF3,
    /// One of the pair lies outside `F1`.
    NotF1,
    /// One of the pair lies in `F1 \ (F2 ∪ F3)`, the other in `F1`.
    F1MinusF2F3,
}

impl ProofBranch {
    pub const ALL: [ProofBranch; 5] = [
        ProofBranch::BothF2,
        ProofBranch::F2F3,
        ProofBranch::BothF3,
        ProofBranch::NotF1,
        ProofBranch::F1MinusF2F3,
    ];

    pub fn key(self) -> &'static str {
        match self {
            ProofBranch::BothF2 => "f_g_in_F2",
            ProofBranch::F2F3 => "f_in_F2_g_in_F3",
            ProofBranch::BothF3 => "f_g_in_F3",
            ProofBranch::NotF1 => "f_not_in_F1",
            ProofBranch::F1MinusF2F3 => "f_in_F1_minus_F2_F3",
        }
    }
}

impl fmt::Display for ProofBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// Classifies an unordered pair by membership, checking the cases in the
/// order: both in `F2`, mixed `F2`/`F3`, both in `F3`, outside `F1`,
/// `F1 \ (F2 ∪ F3)`.
pub fn classify_pair(a: MembershipFlags, b: MembershipFlags) -> ProofBranch {
    if a.in_g && b.in_g {
        if a.in_f2 && b.in_f2 {
            ProofBranch::BothF2
        } else if (a.in_f2 && b.in_f3) || (a.in_f3 && b.in_f2) {
            ProofBranch::F2F3
        } else {
            ProofBranch::BothF3
        }
    } else if !a.in_f1 || !b.in_f1 {
        ProofBranch::NotF1
    } else {
        ProofBranch::F1MinusF2F3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::function::{make_constant, make_f};
    use crate::rational::{int, rat};

    #[test]
    fn f1_flags() {
        let m = membership(&make_f(1).unwrap());
        assert!(m.in_f1 && m.in_f2 && m.in_g);
        assert!(!m.in_f3);
    }

    #[test]
    fn f0_flags() {
        let m = membership(&make_f(0).unwrap());
        assert!(m.in_f1);
        assert!(!m.in_f2 && !m.in_f3 && !m.in_g);
    }

    #[test]
    fn constant_flags() {
        assert!(!membership(&make_constant(rat(1, 2)).unwrap()).in_f1);
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu_eval(&make_f(1).unwrap()), int(0));
        assert_eq!(nu_eval(&make_f(0).unwrap()), int(1));
        assert_eq!(nu_eval(&make_constant(int(0)).unwrap()), int(0));
        for c in [rat(1, 4), rat(1, 2), rat(3, 4), int(1)] {
            assert_eq!(nu_eval(&make_constant(c).unwrap()), int(1));
        }
    }

    #[test]
    fn branch_order() {
        let g2 = MembershipFlags {
            in_f1: true,
            in_f2: true,
            in_f3: false,
            in_g: true,
        };
        let g3 = MembershipFlags {
            in_f1: true,
            in_f2: false,
            in_f3: true,
            in_g: true,
        };
        let out = MembershipFlags {
            in_f1: false,
            in_f2: true,
            in_f3: true,
            in_g: false,
        };
        let bad = MembershipFlags {
            in_f1: true,
            in_f2: false,
            in_f3: false,
            in_g: false,
        };
        assert_eq!(classify_pair(g2, g2), ProofBranch::BothF2);
        assert_eq!(classify_pair(g3, g2), ProofBranch::F2F3);
        assert_eq!(classify_pair(g3, g3), ProofBranch::BothF3);
        assert_eq!(classify_pair(bad, out), ProofBranch::NotF1);
        assert_eq!(classify_pair(g2, bad), ProofBranch::F1MinusF2F3);
    }
}
