use super::Element;

/// Equivalence relation on `0..n`, closed under the generating pairs via
/// union-find.
#[derive(Debug, Clone)]
pub struct Partition {
    parent: Vec<Element>,
}

impl Partition {
    /// The identity (discrete) partition.
    pub fn discrete(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    /// Partition generated by `pairs`.
    pub fn generated_by<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Element, Element)>,
    {
        let mut p = Self::discrete(n);
        for (a, b) in pairs {
            p.union(a, b);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&self, mut a: Element) -> Element {
        while self.parent[a] != a {
            a = self.parent[a];
        }
        a
    }

    /// Merges the classes of `a` and `b`; the smaller id stays the root.
    pub fn union(&mut self, a: Element, b: Element) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
        // path halving on both
        for x in [a, b] {
            let mut x = x;
            while self.parent[x] != x {
                let next = self.parent[x];
                self.parent[x] = self.parent[next];
                x = next;
            }
        }
    }

    pub fn same(&self, a: Element, b: Element) -> bool {
        self.find(a) == self.find(b)
    }

    /// Class index of every element; classes are numbered in order of their
    /// smallest member.
    pub fn class_indices(&self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut index_of_root = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        let mut count = 0;
        for a in 0..n {
            let r = self.find(a);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = count;
                count += 1;
            }
            out.push(index_of_root[r]);
        }
        (count, out)
    }

    /// Classes as sorted member lists.
    pub fn classes(&self) -> Vec<Vec<Element>> {
        let (count, idx) = self.class_indices();
        let mut out = vec![Vec::new(); count];
        for (a, &c) in idx.iter().enumerate() {
            out[c].push(a);
        }
        out
    }
}
