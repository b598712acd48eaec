//! Values of degree functions: a lexicographically ordered group of integer
//! tuples together with a bottom element `-inf`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// An element of `G ∪ {-inf}` with `G = Z^r` ordered lexicographically.
///
/// Values of different arity are never compared by the library; mixing them is
/// a caller bug.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupValue {
    NegInfinity,
    Finite(Vec<i64>),
}

impl GroupValue {
    pub fn int(n: i64) -> Self {
        GroupValue::Finite(vec![n])
    }

    pub fn tuple(components: Vec<i64>) -> Self {
        assert!(!components.is_empty(), "group values need arity >= 1");
        GroupValue::Finite(components)
    }

    pub fn zero(arity: usize) -> Self {
        GroupValue::tuple(vec![0; arity])
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupValue::Finite(_))
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, GroupValue::NegInfinity)
    }

    pub fn components(&self) -> Option<&[i64]> {
        match self {
            GroupValue::Finite(v) => Some(v),
            GroupValue::NegInfinity => None,
        }
    }

    /// The single component of an arity-1 value.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            GroupValue::Finite(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn arity(&self) -> Option<usize> {
        self.components().map(<[i64]>::len)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (GroupValue::Finite(a), GroupValue::Finite(b)) => {
                debug_assert_eq!(a.len(), b.len(), "arity mismatch");
                GroupValue::Finite(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => GroupValue::NegInfinity,
        }
    }

    /// `self - rhs`; `None` when `rhs = -inf` (undefined).
    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        match (self, rhs) {
            (_, GroupValue::NegInfinity) => None,
            (GroupValue::NegInfinity, _) => Some(GroupValue::NegInfinity),
            (GroupValue::Finite(a), GroupValue::Finite(b)) => {
                debug_assert_eq!(a.len(), b.len(), "arity mismatch");
                Some(GroupValue::Finite(a.iter().zip(b).map(|(x, y)| x - y).collect()))
            }
        }
    }

    /// `n * self` for a natural multiplier.
    pub fn times(&self, n: u32) -> Self {
        match self {
            GroupValue::Finite(v) => GroupValue::Finite(v.iter().map(|x| x * i64::from(n)).collect()),
            GroupValue::NegInfinity if n == 0 => panic!("0 * -inf is undefined"),
            GroupValue::NegInfinity => GroupValue::NegInfinity,
        }
    }

    pub fn max_of<'a>(values: impl IntoIterator<Item = &'a GroupValue>) -> GroupValue {
        values.into_iter().max().cloned().unwrap_or(GroupValue::NegInfinity)
    }
}

impl PartialOrd for GroupValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupValue::NegInfinity, GroupValue::NegInfinity) => Ordering::Equal,
            (GroupValue::NegInfinity, _) => Ordering::Less,
            (_, GroupValue::NegInfinity) => Ordering::Greater,
            (GroupValue::Finite(a), GroupValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupValue::NegInfinity => write!(f, "-inf"),
            GroupValue::Finite(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupValue::Finite(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

impl Serialize for GroupValue {
    /// `-inf` as the string `"-inf"`, arity 1 as a number, otherwise an array.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupValue::NegInfinity => serializer.serialize_str("-inf"),
            GroupValue::Finite(v) if v.len() == 1 => serializer.serialize_i64(v[0]),
            GroupValue::Finite(v) => v.serialize(serializer),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering() {
        let ninf = GroupValue::NegInfinity;
        assert!(ninf < GroupValue::int(i64::MIN));
        assert!(GroupValue::int(-3) < GroupValue::int(2));
        assert!(GroupValue::tuple(vec![1, -5]) > GroupValue::tuple(vec![0, 9]));
        assert!(GroupValue::tuple(vec![1, -5]) < GroupValue::tuple(vec![1, -4]));
    }

    #[test]
    fn arithmetic() {
        let a = GroupValue::tuple(vec![1, 2]);
        let b = GroupValue::tuple(vec![3, -1]);
        assert_eq!(a.add(&b), GroupValue::tuple(vec![4, 1]));
        assert_eq!(a.add(&GroupValue::NegInfinity), GroupValue::NegInfinity);
        assert_eq!(a.checked_sub(&b), Some(GroupValue::tuple(vec![-2, 3])));
        assert_eq!(GroupValue::NegInfinity.checked_sub(&a), Some(GroupValue::NegInfinity));
        assert_eq!(a.checked_sub(&GroupValue::NegInfinity), None);
        assert_eq!(GroupValue::int(3).times(4), GroupValue::int(12));
    }

    #[test]
    fn rendering() {
        assert_eq!(GroupValue::NegInfinity.to_string(), "-inf");
        assert_eq!(GroupValue::int(-3).to_string(), "-3");
        assert_eq!(serde_json::to_string(&GroupValue::int(7)).unwrap(), "7");
        assert_eq!(serde_json::to_string(&GroupValue::NegInfinity).unwrap(), "\"-inf\"");
        assert_eq!(serde_json::to_string(&GroupValue::tuple(vec![1, 2])).unwrap(), "[1,2]");
    }
}
