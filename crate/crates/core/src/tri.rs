//! Three-valued (Kleene) logic.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use serde::{Deserialize, Serialize};

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn is_no(self) -> bool {
        self == Tri::No
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Unknown,
        }
    }

    /// Kleene conjunction of an iterator; `Yes` when empty.
    pub fn all<I: IntoIterator<Item = Tri>>(it: I) -> Tri {
        it.into_iter().fold(Tri::Yes, Tri::and)
    }

    /// Kleene disjunction of an iterator; `No` when empty.
    pub fn any<I: IntoIterator<Item = Tri>>(it: I) -> Tri {
        it.into_iter().fold(Tri::No, Tri::or)
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl BitAnd for Tri {
    type Output = Tri;
    fn bitand(self, rhs: Tri) -> Tri {
        self.and(rhs)
    }
}

impl BitOr for Tri {
    type Output = Tri;
    fn bitor(self, rhs: Tri) -> Tri {
        self.or(rhs)
    }
}

impl Not for Tri {
    type Output = Tri;
    fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::Tri::{self, *};

    const ALL: [Tri; 3] = [Yes, No, Unknown];

    #[test]
    fn kleene_tables() {
        assert_eq!(Yes & Unknown, Unknown);
        assert_eq!(No & Unknown, No);
        assert_eq!(Yes | Unknown, Yes);
        assert_eq!(No | Unknown, Unknown);
        for a in ALL {
            for b in ALL {
                assert_eq!(a & b, b & a);
                assert_eq!(!(a & b), !a | !b);
            }
        }
    }

    #[test]
    fn folds() {
        assert_eq!(Tri::all([]), Yes);
        assert_eq!(Tri::any([]), No);
        assert_eq!(Tri::all([Yes, Unknown, Yes]), Unknown);
        assert_eq!(Tri::any([No, Unknown, Yes]), Yes);
    }
}
