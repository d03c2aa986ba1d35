use core::cmp::Ordering;

/// Position of an element in the bisection forest: its root triangle and
/// the child choices taken from there (bit `i` is the choice at depth `i`).
///
/// The order is a pre-order of the forest: an element sorts directly before
/// all of its descendants.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ElementId {
    root: u32,
    depth: u8,
    path: u128,
}

fn prefix_mask(depth: u8) -> u128 {
    if depth >= 128 {
        !0
    } else {
        (1u128 << depth) - 1
    }
}

impl ElementId {
    pub fn root(root: u32) -> Self {
        ElementId {
            root,
            depth: 0,
            path: 0,
        }
    }

    pub fn root_index(&self) -> u32 {
        self.root
    }

    pub fn depth(&self) -> u8 {
        self.depth
    }

    pub fn path(&self) -> u128 {
        self.path
    }

    /// Rebuilds an id from its raw parts; `path` bits beyond `depth` are cleared.
    pub fn from_parts(root: u32, depth: u8, path: u128) -> Self {
        ElementId {
            root,
            depth,
            path: path & prefix_mask(depth),
        }
    }

    pub fn child(&self, which: u8) -> Self {
        assert!(self.depth < 127, "bisection depth limit reached");
        ElementId {
            root: self.root,
            depth: self.depth + 1,
            path: self.path | ((which as u128 & 1) << self.depth),
        }
    }

    pub fn parent(&self) -> Option<Self> {
        (self.depth > 0).then(|| ElementId::from_parts(self.root, self.depth - 1, self.path))
    }

    pub fn is_ancestor_or_self(&self, other: &ElementId) -> bool {
        self.root == other.root
            && self.depth <= other.depth
            && (self.path ^ other.path) & prefix_mask(self.depth) == 0
    }

    pub fn is_strict_ancestor(&self, other: &ElementId) -> bool {
        self.depth < other.depth && self.is_ancestor_or_self(other)
    }
}

impl Ord for ElementId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.root.cmp(&other.root).then_with(|| {
            let d = self.depth.min(other.depth);
            let diff = (self.path ^ other.path) & prefix_mask(d);
            if diff != 0 {
                let p = diff.trailing_zeros();
                ((self.path >> p) & 1).cmp(&((other.path >> p) & 1))
            } else {
                self.depth.cmp(&other.depth)
            }
        })
    }
}

impl PartialOrd for ElementId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder() {
        let r = ElementId::root(0);
        let a = r.child(0);
        let b = r.child(1);
        let aa = a.child(0);
        let ab = a.child(1);
        let mut v = alloc::vec![b, ab, r, aa, a, ElementId::root(1)];
        v.sort();
        assert_eq!(v, alloc::vec![r, a, aa, ab, b, ElementId::root(1)]);
        assert!(a.is_strict_ancestor(&ab));
        assert!(!b.is_ancestor_or_self(&ab));
        assert_eq!(ab.parent(), Some(a));
    }
}
