//! Poset generators: seeded random posets (optionally repaired into
//! lattices) and exhaustive enumeration of all labeled partial orders on
//! small carriers.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use domcheck_core::poset::{FinitePoset, MAX_CARRIER};

/// Largest carrier for exhaustive labeled enumeration.
pub const MAX_ENUMERATION: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("carrier size {0} is outside 1..={MAX_CARRIER}")]
    BadArity(usize),
    #[error("exhaustive enumeration supports n <= {MAX_ENUMERATION}, got {0}")]
    TooLarge(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    Any,
    Lattice,
}

fn close_transitively(up: &mut [u32]) {
    let n = up.len();
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            let mut acc = up[x];
            let mut rest = acc;
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= up[y];
            }
            if acc != up[x] {
                up[x] = acc;
                changed = true;
            }
        }
    }
}

fn poset_from_up(names: Vec<String>, up: &[u32]) -> FinitePoset {
    let n = names.len();
    let mut leq = vec![vec![false; n]; n];
    for x in 0..n {
        for y in 0..n {
            leq[x][y] = up[x] & (1 << y) != 0;
        }
    }
    FinitePoset::from_leq_table(names, &leq).expect("generated relation is a partial order")
}

/// Deterministic random poset: random covers along a fixed linear extension,
/// then the reflexive-transitive closure. `Shape::Lattice` repairs the result
/// until binary sups and infs exist.
pub fn random_poset(n: usize, seed: u64, shape: Shape) -> Result<FinitePoset, GenError> {
    if n == 0 || n > MAX_CARRIER {
        return Err(GenError::BadArity(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32));
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let density: f64 = rng.random_range(0.15..0.55);
    let mut up: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(density) {
                up[i] |= 1 << j;
            }
        }
    }
    close_transitively(&mut up);
    if shape == Shape::Lattice {
        repair_into_lattice(&mut up);
    }
    Ok(poset_from_up(names, &up))
}

/// Makes binary sups and infs exist. First a global bottom and top are
/// forced (the first minimal element is pushed below everything, the first
/// maximal one above everything), then incomparable minimal upper bounds and
/// maximal lower bounds are merged pairwise. Every step strictly grows the
/// order, so the loop terminates, and the fixed scan order keeps the repair
/// deterministic.
fn repair_into_lattice(up: &mut [u32]) {
    let n = up.len();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let down_rows = |up: &[u32]| {
        let mut down = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                if up[y] & (1 << x) != 0 {
                    down[x] |= 1 << y;
                }
            }
        }
        down
    };

    // global bottom: a minimal element below everything (safe: nothing is
    // strictly below a minimal element, so antisymmetry is preserved)
    {
        let down = down_rows(up);
        let m0 = (0..n).find(|&x| down[x] == 1 << x).expect("some minimal element");
        up[m0] = full;
        close_transitively(up);
    }
    // global top, dually
    {
        let t0 = (0..n).find(|&x| up[x] == 1 << x).expect("some maximal element");
        for row in up.iter_mut() {
            *row |= 1 << t0;
        }
        close_transitively(up);
    }

    loop {
        let down = down_rows(up);
        let mut added = None;
        'search: for x in 0..n {
            for y in (x + 1)..n {
                // least upper bound: the upper-bound set needs a unique
                // minimal element
                let ubs = up[x] & up[y];
                let minimal: Vec<usize> = (0..n)
                    .filter(|&u| ubs & (1 << u) != 0 && down[u] & ubs == 1 << u)
                    .collect();
                if minimal.len() > 1 {
                    added = Some((minimal[0], minimal[1]));
                    break 'search;
                }
                let lbs = down[x] & down[y];
                let maximal: Vec<usize> = (0..n)
                    .filter(|&u| lbs & (1 << u) != 0 && up[u] & lbs == 1 << u)
                    .collect();
                if maximal.len() > 1 {
                    added = Some((maximal[1], maximal[0]));
                    break 'search;
                }
            }
        }
        match added {
            Some((lo, hi)) => {
                up[lo] |= 1 << hi;
                close_transitively(up);
            }
            None => return,
        }
    }
}

/// Every labeled partial order on `n` elements, exactly once, in ascending
/// encoding order of the strict relation bits.
pub fn enumerate_labeled_posets(n: usize) -> Result<Vec<FinitePoset>, GenError> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(GenError::TooLarge(n));
    }
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter_map(move |j| if i != j { Some((i, j)) } else { None }))
        .collect();
    let mut out = Vec::new();
    'candidates: for code in 0u64..(1u64 << pairs.len()) {
        let mut up: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if code & (1 << bit) != 0 {
                up[i] |= 1 << j;
            }
        }
        // antisymmetry
        for x in 0..n {
            for y in (x + 1)..n {
                if up[x] & (1 << y) != 0 && up[y] & (1 << x) != 0 {
                    continue 'candidates;
                }
            }
        }
        // transitivity: each row already closed under one-step extension
        for x in 0..n {
            let mut acc = up[x];
            let mut rest = acc;
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= up[y];
            }
            if acc != up[x] {
                continue 'candidates;
            }
        }
        out.push(poset_from_up(names.clone(), &up));
    }
    Ok(out)
}
