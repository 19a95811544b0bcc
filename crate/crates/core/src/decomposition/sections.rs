use serde::Serialize;

use super::signed::SignedDecomposition;
use super::vertices::algebraic_vertices;
use crate::error::{Error, Result};
use crate::kernel::OrientedHyperplane;
use crate::polyfun::PolyhedralFunction;
use crate::transform::{is_zero, transform_function};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCheck {
    pub hyperplane: OrientedHyperplane,
    pub section_zero: bool,
}

/// `f` has zero transform iff every signed section does, checked on a
/// finite set of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub function_zero: bool,
    pub sections: Vec<SectionCheck>,
    pub all_sections_zero: bool,
    /// `function_zero == all_sections_zero` on the tested set.
    pub biconditional_holds: bool,
    /// A zero-transform function with a nonzero section transform.
    pub contradiction: bool,
}

pub fn check_section_theorem(
    f: &PolyhedralFunction,
    hyperplanes: &[OrientedHyperplane],
) -> SectionReport {
    let function_zero = is_zero(&transform_function(f));
    let sections: Vec<SectionCheck> = crate::par::map(hyperplanes, |h| {
        let s = f.signed_section(h);
        SectionCheck {
            hyperplane: h.clone(),
            section_zero: is_zero(&transform_function(&s.section)),
        }
    });
    let all_sections_zero = sections.iter().all(|s| s.section_zero);
    SectionReport {
        function_zero,
        all_sections_zero,
        biconditional_holds: function_zero == all_sections_zero,
        contradiction: function_zero && !all_sections_zero,
        sections,
    }
}

/// The generating hyperplanes of `f` in canonical orientation.
pub fn generating_hyperplanes(f: &PolyhedralFunction) -> Vec<OrientedHyperplane> {
    f.hyperplanes()
        .iter()
        .map(|h| OrientedHyperplane::from_plane(h.clone(), false))
        .collect()
}

/// Whether the decomposition uses every algebraic vertex, as it must.
pub fn minimality_check(f: &PolyhedralFunction, dec: &SignedDecomposition) -> Result<bool> {
    if !dec.certificate {
        return Err(Error::Precondition(
            "decomposition certificate is false".into(),
        ));
    }
    let used = dec.vertex_set();
    Ok(algebraic_vertices(f)
        .algebraic
        .iter()
        .all(|v| used.contains(v)))
}
