//! Prime spectra of finite Tambara functors, computed by exhaustive table
//! scans.
//!
//! Groups, rings and frames are finite tables; a [`TambaraFunctor`] stores a
//! ring at every subgroup with every restriction, transfer, norm and
//! conjugation. On top of that sit Tambara ideals ([`ideal`]) and the
//! spectrum with its frame of radical ideals ([`spectrum`]).

// Subgroup and element ids index several parallel tables at once.
#![allow(clippy::needless_range_loop)]

pub mod elemset;
pub mod error;
pub mod fixtures;
pub mod frame;
pub mod group;
pub mod ideal;
pub mod report;
pub mod ring;
pub mod spectrum;
pub mod tambara;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use frame::{FiniteFrame, FiniteTopSpace, FramePoint, PointSet};
pub use group::{FiniteGroup, Subgroup};
pub use ideal::TambaraIdeal;
pub use report::{Check, Report};
pub use ring::{FiniteCommRing, RingHom, RingIdeal};
pub use spectrum::{Analysis, NakaokaSpectrum, RadIdFrame};
pub use tambara::{check_axioms, AxiomReport, AxiomStatus, Origin, TambaraData, TambaraFunctor, TambaraMorphism};
