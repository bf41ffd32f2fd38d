// SPDX-License-Identifier: MIT
//! d-separation by reachability ("Bayes ball").

use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

/// Nodes d-connected to `a` given `s`, excluding `a` and members of `s`.
pub fn reachable(g: &Dag, a: usize, s: NodeSet) -> NodeSet {
    // A collider passes the ball iff it is in `s` or has a descendant in `s`.
    let opens = g.ancestors_of_set(s).union(s);
    // Visited states, split by the direction the ball arrived from.
    let mut up = NodeSet::EMPTY; // arrived from a child
    let mut down = NodeSet::EMPTY; // arrived from a parent
    let mut out = NodeSet::EMPTY;
    let mut stack: Vec<(usize, bool)> = vec![(a, true)];
    up.insert(a);
    while let Some((v, from_child)) = stack.pop() {
        let blocked = s.contains(v);
        if !blocked && v != a {
            out.insert(v);
        }
        let mut push = |w: usize, to_parent: bool, stack: &mut Vec<(usize, bool)>| {
            let seen = if to_parent { &mut up } else { &mut down };
            if !seen.contains(w) {
                seen.insert(w);
                stack.push((w, to_parent));
            }
        };
        if from_child {
            if !blocked {
                for p in g.parents_of(v).iter() {
                    push(p, true, &mut stack);
                }
                for c in g.children_of(v).iter() {
                    push(c, false, &mut stack);
                }
            }
        } else {
            if !blocked {
                for c in g.children_of(v).iter() {
                    push(c, false, &mut stack);
                }
            }
            if opens.contains(v) {
                for p in g.parents_of(v).iter() {
                    push(p, true, &mut stack);
                }
            }
        }
    }
    out
}

/// Index-level d-separation; callers guarantee `a != b` and `a, b ∉ s`.
pub fn d_separated(g: &Dag, a: usize, b: usize, s: NodeSet) -> bool {
    !reachable(g, a, s).contains(b)
}

/// Does `s` d-separate `a` and `b` in `g`?
pub fn d_separates<S: AsRef<str>>(
    g: &Dag,
    a: &str,
    b: &str,
    s: impl IntoIterator<Item = S>,
) -> Result<bool> {
    let (ia, ib) = (g.index(a)?, g.index(b)?);
    let set = g.set_of(s)?;
    check_query(g, ia, ib, set)?;
    Ok(d_separated(g, ia, ib, set))
}

pub(crate) fn check_query(g: &Dag, a: usize, b: usize, s: NodeSet) -> Result<()> {
    if a == b {
        return Err(Error::Precondition(format!(
            "d-separation query needs two distinct variables, got `{}` twice",
            g.name(a)
        )));
    }
    for v in [a, b] {
        if s.contains(v) {
            return Err(Error::Precondition(format!(
                "`{}` is an endpoint and cannot also be conditioned on",
                g.name(v)
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_cases() {
        let chain = Dag::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        assert!(d_separates(&chain, "a", "c", ["b"]).unwrap());
        assert!(!d_separates(&chain, "a", "c", Vec::<&str>::new()).unwrap());
        let col = Dag::new(["a", "b", "c"], [("a", "b"), ("c", "b")]).unwrap();
        assert!(!d_separates(&col, "a", "c", ["b"]).unwrap());
        assert!(d_separates(&col, "a", "c", Vec::<&str>::new()).unwrap());
    }

    #[test]
    fn descendant_of_collider_opens_it() {
        let g = Dag::new(["a", "b", "c", "d"], [("a", "b"), ("c", "b"), ("b", "d")]).unwrap();
        assert!(!d_separates(&g, "a", "c", ["d"]).unwrap());
    }

    #[test]
    fn bad_queries() {
        let g = Dag::new(["a", "b"], [("a", "b")]).unwrap();
        assert!(matches!(d_separates(&g, "a", "a", Vec::<&str>::new()), Err(Error::Precondition(_))));
        assert!(matches!(d_separates(&g, "a", "b", ["a"]), Err(Error::Precondition(_))));
        assert!(matches!(d_separates(&g, "a", "q", Vec::<&str>::new()), Err(Error::UnknownVariable(_))));
    }
}
