//! The four relative Frobenius correspondences between the presentations.
//! Each twists exactly one member of the flag; the two round trips through
//! Z~ or Z^ compose to the coordinatewise Frobenius on Z.

use exactmath::FiniteField;

use crate::variety::{DLPoint, Variant};
use crate::{DlError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrobeniusMap {
    /// Z^ -> Z, twisting H2.
    PhiHat,
    /// Z -> Z^, twisting H1.
    PsiHat,
    /// Z -> Z~, twisting H2.
    PhiTilde,
    /// Z~ -> Z, twisting H1.
    PsiTilde,
}

impl FrobeniusMap {
    pub fn all() -> [FrobeniusMap; 4] {
        [
            FrobeniusMap::PhiHat,
            FrobeniusMap::PsiHat,
            FrobeniusMap::PhiTilde,
            FrobeniusMap::PsiTilde,
        ]
    }

    pub fn source(self) -> Variant {
        match self {
            FrobeniusMap::PhiHat => Variant::Hat,
            FrobeniusMap::PsiHat => Variant::Z,
            FrobeniusMap::PhiTilde => Variant::Z,
            FrobeniusMap::PsiTilde => Variant::Tilde,
        }
    }

    pub fn target(self) -> Variant {
        match self {
            FrobeniusMap::PhiHat => Variant::Z,
            FrobeniusMap::PsiHat => Variant::Hat,
            FrobeniusMap::PhiTilde => Variant::Tilde,
            FrobeniusMap::PsiTilde => Variant::Z,
        }
    }
}

pub fn relative_frobenius(
    f: &FiniteField,
    map: FrobeniusMap,
    pt: &DLPoint,
) -> Result<DLPoint> {
    if !pt.satisfies(f, map.source()) {
        return Err(DlError::WrongVariant);
    }
    let out = match map {
        FrobeniusMap::PhiHat | FrobeniusMap::PhiTilde => DLPoint {
            h1: pt.h1.clone(),
            h2: pt.h2.frobenius(f),
        },
        FrobeniusMap::PsiHat | FrobeniusMap::PsiTilde => DLPoint {
            h1: pt.h1.frobenius(f),
            h2: pt.h2.clone(),
        },
    };
    Ok(out)
}
