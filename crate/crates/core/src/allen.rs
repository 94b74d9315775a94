//! Allen's thirteen interval atoms, their translation into endpoint roles,
//! and the PRECEDES / INTERSECTS / FOLLOWS partition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::ConvexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AllenAtom {
    Before,
    Meets,
    Overlaps,
    Starts,
    During,
    Finishes,
    After,
    MetBy,
    OverlappedBy,
    StartedBy,
    Contains,
    FinishedBy,
    Equals,
}

impl AllenAtom {
    pub const ALL: [AllenAtom; 13] = [
        AllenAtom::Before,
        AllenAtom::Meets,
        AllenAtom::Overlaps,
        AllenAtom::Starts,
        AllenAtom::During,
        AllenAtom::Finishes,
        AllenAtom::After,
        AllenAtom::MetBy,
        AllenAtom::OverlappedBy,
        AllenAtom::StartedBy,
        AllenAtom::Contains,
        AllenAtom::FinishedBy,
        AllenAtom::Equals,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            AllenAtom::Before => "<",
            AllenAtom::Meets => "m",
            AllenAtom::Overlaps => "o",
            AllenAtom::Starts => "s",
            AllenAtom::During => "d",
            AllenAtom::Finishes => "f",
            AllenAtom::After => ">",
            AllenAtom::MetBy => "mi",
            AllenAtom::OverlappedBy => "oi",
            AllenAtom::StartedBy => "si",
            AllenAtom::Contains => "di",
            AllenAtom::FinishedBy => "fi",
            AllenAtom::Equals => "eq",
        }
    }

    pub fn long_name(self) -> &'static str {
        match self {
            AllenAtom::Before => "before",
            AllenAtom::Meets => "meets",
            AllenAtom::Overlaps => "overlaps",
            AllenAtom::Starts => "starts",
            AllenAtom::During => "during",
            AllenAtom::Finishes => "finishes",
            AllenAtom::After => "after",
            AllenAtom::MetBy => "met-by",
            AllenAtom::OverlappedBy => "overlapped-by",
            AllenAtom::StartedBy => "started-by",
            AllenAtom::Contains => "contains",
            AllenAtom::FinishedBy => "finished-by",
            AllenAtom::Equals => "equals",
        }
    }

    pub fn converse(self) -> AllenAtom {
        use AllenAtom::*;
        match self {
            Before => After,
            Meets => MetBy,
            Overlaps => OverlappedBy,
            Starts => StartedBy,
            During => Contains,
            Finishes => FinishedBy,
            After => Before,
            MetBy => Meets,
            OverlappedBy => Overlaps,
            StartedBy => Starts,
            Contains => During,
            FinishedBy => Finishes,
            Equals => Equals,
        }
    }

    /// Which atom holds between `I = (ib, ie)` and `J = (jb, je)`, both durative.
    pub fn classify<T: PartialOrd>(ib: &T, ie: &T, jb: &T, je: &T) -> Option<AllenAtom> {
        use AllenAtom::*;
        if !(ib < ie && jb < je) {
            return None;
        }
        let atom = if ie < jb {
            Before
        } else if ie == jb {
            Meets
        } else if je < ib {
            After
        } else if je == ib {
            MetBy
        } else if ib == jb && ie == je {
            Equals
        } else if ib == jb {
            if ie < je {
                Starts
            } else {
                StartedBy
            }
        } else if ie == je {
            if ib > jb {
                Finishes
            } else {
                FinishedBy
            }
        } else if jb < ib && ie < je {
            During
        } else if ib < jb && je < ie {
            Contains
        } else if ib < jb {
            Overlaps
        } else {
            OverlappedBy
        };
        Some(atom)
    }
}

impl fmt::Display for AllenAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for AllenAtom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AllenAtom::ALL
            .into_iter()
            .find(|a| a.short_name() == s || a.long_name() == s)
            .ok_or_else(|| format!("unknown Allen atom `{s}`"))
    }
}

/// Sign of an endpoint difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: PartialOrd + Default>(x: &T) -> Sign {
        let zero = T::default();
        if *x < zero {
            Sign::Negative
        } else if *x > zero {
            Sign::Positive
        } else {
            Sign::Zero
        }
    }

    pub fn to_set(self) -> ConvexSet {
        match self {
            Sign::Negative => ConvexSet::negative(),
            Sign::Zero => ConvexSet::zero(),
            Sign::Positive => ConvexSet::positive(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// Signs of `(J_b - I_b, J_e - I_b, J_b - I_e, J_e - I_e)`.
pub type SignVector = [Sign; 4];

/// Derives the sign vector of every atom by enumerating all placements of
/// the four endpoints on ranks `0..4` and classifying each one.
pub fn atom_endpoint_semantics(atom: AllenAtom) -> SignVector {
    let mut found: Option<SignVector> = None;
    for ib in 0..4i32 {
        for ie in 0..4 {
            for jb in 0..4 {
                for je in 0..4 {
                    if AllenAtom::classify(&ib, &ie, &jb, &je) != Some(atom) {
                        continue;
                    }
                    let signs = [
                        Sign::of(&(jb - ib)),
                        Sign::of(&(je - ib)),
                        Sign::of(&(jb - ie)),
                        Sign::of(&(je - ie)),
                    ];
                    match found {
                        None => found = Some(signs),
                        Some(prev) => assert_eq!(prev, signs, "atom {atom} has two sign patterns"),
                    }
                }
            }
        }
    }
    found.expect("every atom is realizable on four ranks")
}

/// The three-block partition of Allen's atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PartitionRelation {
    Precedes,
    Intersects,
    Follows,
}

impl PartitionRelation {
    pub const ALL: [PartitionRelation; 3] = [
        PartitionRelation::Precedes,
        PartitionRelation::Intersects,
        PartitionRelation::Follows,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PartitionRelation::Precedes => "PRECEDES",
            PartitionRelation::Intersects => "INTERSECTS",
            PartitionRelation::Follows => "FOLLOWS",
        }
    }

    pub fn atoms(self) -> Vec<AllenAtom> {
        AllenAtom::ALL
            .into_iter()
            .filter(|a| partition_of(*a) == self)
            .collect()
    }

    pub fn converse(self) -> PartitionRelation {
        match self {
            PartitionRelation::Precedes => PartitionRelation::Follows,
            PartitionRelation::Intersects => PartitionRelation::Intersects,
            PartitionRelation::Follows => PartitionRelation::Precedes,
        }
    }
}

impl fmt::Display for PartitionRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PartitionRelation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PartitionRelation::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown partition relation `{s}`"))
    }
}

pub fn partition_of(atom: AllenAtom) -> PartitionRelation {
    use AllenAtom::*;
    match atom {
        Before | Meets => PartitionRelation::Precedes,
        After | MetBy => PartitionRelation::Follows,
        _ => PartitionRelation::Intersects,
    }
}

/// Constraints on the four endpoint differences between intervals `I` and `J`:
/// `J_b - I_b`, `J_e - I_b`, `J_b - I_e`, `J_e - I_e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndpointRole {
    pub rbb: ConvexSet,
    pub rbe: ConvexSet,
    pub reb: ConvexSet,
    pub ree: ConvexSet,
}

impl EndpointRole {
    pub fn new(rbb: ConvexSet, rbe: ConvexSet, reb: ConvexSet, ree: ConvexSet) -> Self {
        EndpointRole { rbb, rbe, reb, ree }
    }

    pub fn universal() -> Self {
        let u = ConvexSet::universal();
        EndpointRole::new(u.clone(), u.clone(), u.clone(), u)
    }

    /// `<{0}, (0,+inf), (-inf,0), {0}>`: the interval is durative.
    pub fn well_formed() -> Self {
        EndpointRole::new(
            ConvexSet::zero(),
            ConvexSet::positive(),
            ConvexSet::negative(),
            ConvexSet::zero(),
        )
    }

    pub fn from_signs(signs: SignVector) -> Self {
        EndpointRole::new(
            signs[0].to_set(),
            signs[1].to_set(),
            signs[2].to_set(),
            signs[3].to_set(),
        )
    }

    pub fn components(&self) -> [&ConvexSet; 4] {
        [&self.rbb, &self.rbe, &self.reb, &self.ree]
    }

    pub fn has_empty_component(&self) -> bool {
        self.components().iter().any(|c| c.is_empty())
    }

    pub fn intersect(&self, other: &EndpointRole) -> EndpointRole {
        EndpointRole::new(
            self.rbb.intersect(&other.rbb),
            self.rbe.intersect(&other.rbe),
            self.reb.intersect(&other.reb),
            self.ree.intersect(&other.ree),
        )
    }

    /// The same constraint seen from `J` to `I`.
    pub fn converse(&self) -> EndpointRole {
        EndpointRole::new(
            self.rbb.negate(),
            self.reb.negate(),
            self.rbe.negate(),
            self.ree.negate(),
        )
    }
}

impl fmt::Display for EndpointRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{},{}>", self.rbb, self.rbe, self.reb, self.ree)
    }
}

pub fn translate_atom(atom: AllenAtom) -> EndpointRole {
    use AllenAtom::*;
    use Sign::{Negative as N, Positive as P, Zero as Z};
    let signs = match atom {
        Before => [P, P, P, P],
        Meets => [P, P, Z, P],
        Overlaps => [P, P, N, P],
        Starts => [Z, P, N, P],
        During => [N, P, N, P],
        Finishes => [N, P, N, Z],
        After => [N, N, N, N],
        MetBy => [N, Z, N, N],
        OverlappedBy => [N, P, N, N],
        StartedBy => [Z, P, N, N],
        Contains => [P, P, N, N],
        FinishedBy => [P, P, N, Z],
        Equals => [Z, P, N, Z],
    };
    EndpointRole::from_signs(signs)
}

/// The commonly published Allen-to-endpoint translation table, kept verbatim
/// for the errata report. Two of its cells (see [`errata`]) are inconsistent
/// with the endpoint orderings that define the atoms.
pub fn published_translation(atom: AllenAtom) -> SignVector {
    use AllenAtom::*;
    use Sign::{Negative as N, Positive as P, Zero as Z};
    match atom {
        Before => [P, P, P, P],
        Meets => [P, P, Z, P],
        Overlaps => [P, P, N, P],
        Starts => [Z, P, N, P],
        During => [N, P, N, P],
        Finishes => [N, P, N, Z],
        After => [N, N, N, N],
        MetBy => [N, Z, N, N],
        OverlappedBy => [N, P, N, P],
        StartedBy => [Z, P, N, N],
        Contains => [P, P, N, N],
        FinishedBy => [P, P, N, Z],
        Equals => [Z, P, P, Z],
    }
}

/// One row of the derived translation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationRow {
    pub atom: AllenAtom,
    pub derived: SignVector,
    pub published: SignVector,
}

impl TranslationRow {
    pub fn is_erratum(&self) -> bool {
        self.derived != self.published
    }

    /// Component slots (0 = bb, 1 = be, 2 = eb, 3 = ee) where the rows differ.
    pub fn differing_slots(&self) -> Vec<usize> {
        (0..4)
            .filter(|&i| self.derived[i] != self.published[i])
            .collect()
    }
}

pub fn translation_table() -> Vec<TranslationRow> {
    AllenAtom::ALL
        .into_iter()
        .map(|atom| TranslationRow {
            atom,
            derived: atom_endpoint_semantics(atom),
            published: published_translation(atom),
        })
        .collect()
}

pub fn errata() -> Vec<TranslationRow> {
    translation_table()
        .into_iter()
        .filter(TranslationRow::is_erratum)
        .collect()
}

pub fn partition_role(p: PartitionRelation) -> EndpointRole {
    let u = ConvexSet::universal;
    match p {
        PartitionRelation::Precedes => {
            EndpointRole::new(u(), u(), ConvexSet::non_negative(), u())
        }
        PartitionRelation::Follows => {
            EndpointRole::new(u(), ConvexSet::non_positive(), u(), u())
        }
        PartitionRelation::Intersects => {
            EndpointRole::new(u(), ConvexSet::positive(), ConvexSet::negative(), u())
        }
    }
}
