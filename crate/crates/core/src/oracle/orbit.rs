//! Breadth-first exploration of everything reachable from a word by the
//! rewrite rules, used to check that classification is well defined.

use std::collections::{HashSet, VecDeque};

use crate::normalize::glue_singles;
use crate::rewrite::{
    block_at, cancel, fold_concord, interleave_to_handle, slide_block, transpose_discord,
};
use crate::word::{Character, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// One representative per class up to rotation, inversion and renaming,
    /// in discovery order; the start word comes first.
    pub words: Vec<Word>,
    /// Set when the state budget ran out before the closure was complete.
    pub truncated: bool,
}

/// Words one rule application away from `w`.
///
/// Covers cancellation, discord transposition, concord folding and its
/// inverse, block slides, handle extraction, gluing of boundary letters,
/// rotation and inversion. Nothing here lengthens a word.
pub fn neighbours(w: &Word) -> Vec<Word> {
    let n = w.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    out.push(w.rotate(1));
    out.push(w.invert());
    out.extend((0..n).filter_map(|pos| cancel(w, pos).ok()));
    out.extend((0..n).filter_map(|pos| glue_singles(w, pos).ok()));
    let table = w.pairing();
    for (label, p) in table.iter() {
        match p.character {
            Character::Discord => {
                out.extend((0..n).filter_map(|split| transpose_discord(w, label, split).ok()));
                for (other, _) in table.iter() {
                    if let Ok(next) = interleave_to_handle(w, label, other) {
                        out.push(next);
                    }
                }
            }
            Character::Concord => out.extend(fold_concord(w, label).ok()),
            Character::Single => {}
        }
    }
    for start in 0..n {
        let Some(len) = block_at(w, start) else {
            continue;
        };
        out.extend((0..n).filter_map(|dest| slide_block(w, start, dest).ok()));
        if len == 2 {
            out.extend(unfold(w, start));
        }
    }
    out
}

// inverse of folding: X a a γ -> a X' a γ for every prefix X ending at the block
fn unfold(w: &Word, start: usize) -> Vec<Word> {
    let n = w.len();
    let a: Letter = w.at(start).clone();
    (1..=n - 2)
        .map(|k| {
            let r = w.rotate(start as i64 - k as i64);
            let ls = r.letters();
            let x = Word::from_letters_unchecked(ls[..k].to_vec()).invert();
            let letters = std::iter::once(a.clone())
                .chain(x.into_letters())
                .chain(std::iter::once(a.clone()))
                .chain(ls[k + 2..].iter().cloned())
                .collect();
            Word::from_letters_unchecked(letters)
        })
        .collect()
}

/// Breadth-first closure of `{w}` under [`neighbours`], keeping words of
/// length at most `max_length` and stopping after `max_states` classes.
pub fn bfs_orbit(w: &Word, max_length: usize, max_states: usize) -> Orbit {
    let mut seen = HashSet::new();
    let mut words = Vec::new();
    let mut queue = VecDeque::new();
    let mut truncated = false;
    seen.insert(w.cyclic_key(true));
    words.push(w.clone());
    queue.push_back(w.clone());
    'search: while let Some(current) = queue.pop_front() {
        for next in neighbours(&current) {
            if next.len() > max_length || !seen.insert(next.cyclic_key(true)) {
                continue;
            }
            if words.len() >= max_states {
                truncated = true;
                break 'search;
            }
            words.push(next.clone());
            queue.push_back(next);
        }
    }
    Orbit { words, truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{cyclic_equal, parse};

    fn w(s: &str) -> Word {
        parse(s).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let orbit = bfs_orbit(&w("a a'"), 4, 100);
        assert!(orbit.words.contains(&Word::empty()));
        assert!(!orbit.truncated);

        let orbit = bfs_orbit(&w("a b a b"), 4, 1000);
        assert!(orbit
            .words
            .iter()
            .any(|x| cyclic_equal(x, &w("a a b' b"), true)));

        let orbit = bfs_orbit(&Word::empty(), 4, 10);
        assert_eq!(orbit.words, vec![Word::empty()]);
    }

    #[test]
    fn unfold_inverts_fold() {
        let start = w("a b a c");
        let folded = fold_concord(&start, &crate::word::Label::new("a").unwrap()).unwrap();
        assert_eq!(folded, w("b' a a c"));
        assert!(unfold(&folded, 1)
            .iter()
            .any(|x| cyclic_equal(x, &start, false)));
    }

    #[test]
    fn truncation_flag() {
        let orbit = bfs_orbit(&w("a b c a' b' c'"), 6, 3);
        assert_eq!(orbit.words.len(), 3);
        assert!(orbit.truncated);
    }
}
