//! The defining relations of `B_{r,s}`.

use crate::field::{Field, Scalar};

use super::token::{Tok, Word};

/// A linear combination of words.
pub type LinWord = Vec<(Scalar, Word)>;

/// A defining relation `lhs = rhs`, tagged with its letter and the
/// generator indices it was instantiated at.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: LinWord,
    pub rhs: LinWord,
}

fn w(f: &Field, word: &[Tok]) -> LinWord {
    vec![(f.one(), word.to_vec())]
}

/// All instances of the defining relations for the given `(r, s)`.
pub fn defining_relations(r: usize, s: usize, f: &Field) -> Vec<Relation> {
    use Tok::*;
    let mut out = Vec::new();
    let mut push = |name: String, lhs: LinWord, rhs: LinWord| out.push(Relation { name, lhs, rhs });
    for (letters, starred, n) in [
        (["a", "b", "c", "d", "e"], false, r),
        (["h", "i", "j", "k", "l"], true, s),
    ] {
        let mk = |i: usize| if starred { H(i as u8) } else { G(i as u8) };
        for i in 1..n {
            // (g - q)(g + q^{-1}) = 0, i.e. g^2 = z g + 1
            push(
                format!("({}) i={i}", letters[0]),
                w(f, &[mk(i), mk(i)]),
                vec![(f.z().clone(), vec![mk(i)]), (f.one(), vec![])],
            );
        }
        for i in 1..n {
            for j in i + 2..n {
                push(
                    format!("({}) i={i} j={j}", letters[1]),
                    w(f, &[mk(i), mk(j)]),
                    w(f, &[mk(j), mk(i)]),
                );
            }
        }
        for i in 1..n.saturating_sub(1) {
            push(
                format!("({}) i={i}", letters[2]),
                w(f, &[mk(i), mk(i + 1), mk(i)]),
                w(f, &[mk(i + 1), mk(i), mk(i + 1)]),
            );
        }
        for i in 2..n {
            push(
                format!("({}) i={i}", letters[3]),
                w(f, &[mk(i), E]),
                w(f, &[E, mk(i)]),
            );
        }
        if n >= 2 {
            push(
                format!("({})", letters[4]),
                w(f, &[E, mk(1), E]),
                vec![(f.rho().clone(), vec![E])],
            );
        }
    }
    push(
        "(f)".into(),
        w(f, &[E, E]),
        vec![(f.delta().clone(), vec![E])],
    );
    for i in 1..r {
        for j in 1..s {
            push(
                format!("(g) i={i} j={j}"),
                w(f, &[G(i as u8), H(j as u8)]),
                w(f, &[H(j as u8), G(i as u8)]),
            );
        }
    }
    if r >= 2 && s >= 2 {
        push(
            "(m)".into(),
            w(f, &[E, GInv(1), H(1), E, G(1)]),
            w(f, &[E, GInv(1), H(1), E, H(1)]),
        );
        push(
            "(n)".into(),
            w(f, &[G(1), E, GInv(1), H(1), E]),
            w(f, &[H(1), E, GInv(1), H(1), E]),
        );
    }
    // Alphabetical by letter; the sort is stable so instances stay in order.
    out.sort_by_key(|rel| rel.name.as_bytes()[1]);
    out
}

/// Expands inverse tokens via `g^{-1} = g - z` and returns `lhs - rhs` as
/// a combination of words in positive tokens.
pub fn expand_relator(rel: &Relation, z: &Scalar) -> LinWord {
    let mut out = Vec::new();
    for (c, word) in &rel.lhs {
        out.extend(expand_word(c, word, z));
    }
    for (c, word) in &rel.rhs {
        out.extend(expand_word(&-c, word, z));
    }
    out
}

/// `c * word` with every inverse token expanded.
pub fn expand_word(c: &Scalar, word: &[Tok], z: &Scalar) -> LinWord {
    let mut acc: LinWord = vec![(c.clone(), Vec::new())];
    for &t in word {
        let mut next = Vec::with_capacity(acc.len() * 2);
        for (c, w) in acc {
            if t.is_inverse() {
                let mut w1 = w.clone();
                w1.push(t.positive());
                next.push((c.clone(), w1));
                next.push((-&(&c * z), w));
            } else {
                let mut w1 = w;
                w1.push(t);
                next.push((c, w1));
            }
        }
        acc = next;
    }
    acc
}
