//! Codings between words, pictures, grids and runs, and the two prefix metrics.

use crate::error::{Error, Result};
use crate::grid::{Grid, Letter, PictureWindow, RunAssignment, State};

/// Cantor diagonal pairing `b(i, j) = (i+j−2)(i+j−1)/2 + i` on positive integers.
pub fn pair(i: u64, j: u64) -> Result<u64> {
    if i == 0 || j == 0 {
        return Err(Error::NonPositive);
    }
    let s = i + j;
    Ok((s - 2) * (s - 1) / 2 + i)
}

pub fn unpair(k: u64) -> Result<(u64, u64)> {
    if k == 0 {
        return Err(Error::NonPositive);
    }
    // t = i + j − 1 is the least t with t(t+1)/2 ≥ k
    let mut t = ((8 * k + 1).isqrt() - 1) / 2;
    while t * (t + 1) / 2 < k {
        t += 1;
    }
    let i = k - t * (t - 1) / 2;
    Ok((i, t + 1 - i))
}

fn pair_usize(i: usize, j: usize) -> usize {
    pair(i as u64, j as u64).expect("positive coordinates") as usize
}

fn depth_of(p: &PictureWindow) -> Result<usize> {
    p.depth()
        .ok_or_else(|| Error::ShapeMismatch("expected an omega-prefix window".into()))
}

/// `p^σ(i, j) = σ(b(i, j))` on the depth-`n` corner.
pub fn word_to_picture(sigma: &[Letter], n: usize) -> Result<PictureWindow> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    let required = pair_usize(n, n);
    if sigma.len() < required {
        return Err(Error::PrefixTooShort {
            required,
            got: sigma.len(),
        });
    }
    let rows: Vec<Vec<Letter>> = (1..=n)
        .map(|j| (1..=n).map(|i| sigma[pair_usize(i, j) - 1]).collect())
        .collect();
    PictureWindow::omega_prefix(n, &rows)
}

/// Positions `1..=b(n, n)` of `σ` as far as the window determines them.
pub fn picture_to_word(p: &PictureWindow) -> Result<Vec<Option<Letter>>> {
    let n = depth_of(p)?;
    let mut w = vec![None; pair_usize(n, n)];
    for j in 1..=n {
        for i in 1..=n {
            w[pair_usize(i, j) - 1] = Some(p.get(i, j));
        }
    }
    Ok(w)
}

/// Row 1 of a window, left to right.
pub fn first_row(p: &PictureWindow) -> Vec<Letter> {
    p.interior_rows().into_iter().next().unwrap_or_default()
}

/// `σ_i(j) = σ(b(i, j))` for every `j` the prefix determines.
pub fn slice_family<T: Clone>(sigma: &[T], i: usize) -> Result<Vec<T>> {
    if i == 0 {
        return Err(Error::NonPositive);
    }
    Ok((1..)
        .map(|j| pair_usize(i, j))
        .take_while(|&k| k <= sigma.len())
        .map(|k| sigma[k - 1].clone())
        .collect())
}

/// A position where `σ_j` and `σ_k` differ, if the prefix shows one.
pub fn slices_differ_at<T: Clone + PartialEq>(
    sigma: &[T],
    j: usize,
    k: usize,
) -> Result<Option<usize>> {
    let (a, b) = (slice_family(sigma, j)?, slice_family(sigma, k)?);
    Ok(a.iter().zip(&b).position(|(x, y)| x != y).map(|p| p + 1))
}

/// Checks `∀ j > k ∃ i σ_j(i) ≠ σ_k(i)` for `1 ≤ k < j ≤ upto` on the prefix.
/// `false` means some pair is not yet separated, not that the slices are equal.
pub fn slices_distinct<T: Clone + PartialEq>(sigma: &[T], upto: usize) -> Result<bool> {
    for j in 2..=upto {
        for k in 1..j {
            if slices_differ_at(sigma, j, k)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `φ(p)(i, j) = p(i+1, j+1)`: the interior as a 0-based grid.
pub fn phi(p: &PictureWindow) -> Result<Grid<Letter>> {
    let n = depth_of(p)?;
    Ok(Grid::from_fn(n, n, |i, j| p.get(i + 1, j + 1)))
}

pub fn phi_inverse(g: &Grid<Letter>) -> Result<PictureWindow> {
    if g.cols() != g.rows() || g.cols() == 0 {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} is not a nonempty square",
            g.cols(),
            g.rows()
        )));
    }
    let rows: Vec<Vec<Letter>> = (0..g.rows()).map(|j| g.row(j).to_vec()).collect();
    PictureWindow::omega_prefix(g.cols(), &rows)
}

/// A distance between two infinite objects seen through finite windows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Distance {
    /// `2^-p` for the first visible difference, `0` when none is visible.
    pub window: f64,
    /// Certified upper bound on the true distance.
    pub upper: f64,
    /// True when `window` is the true distance.
    pub exact: bool,
}

fn dyadic(e: usize) -> f64 {
    (-(e as f64)).exp2()
}

fn distance_from(first: Option<usize>, visible: usize) -> Distance {
    match first {
        Some(p) if p < visible => Distance {
            window: dyadic(p),
            upper: dyadic(p),
            exact: true,
        },
        Some(p) => Distance {
            window: dyadic(p),
            upper: dyadic(visible),
            exact: false,
        },
        None => Distance {
            window: 0.0,
            upper: dyadic(visible),
            exact: false,
        },
    }
}

/// `d(x, y) = 2^-p` with `p` the least `i + j` where the grids differ.
///
/// On an `n × n` window anti-diagonals `0..n` are complete, so a difference
/// there is exact; anything later only bounds the distance by `2^-n`.
pub fn grid_distance<T: PartialEq>(x: &Grid<T>, y: &Grid<T>) -> Result<Distance> {
    if !x.same_shape(y) {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            x.cols(),
            x.rows(),
            y.cols(),
            y.rows()
        )));
    }
    let mut first: Option<usize> = None;
    for j in 0..x.rows() {
        for i in 0..x.cols() {
            if x.get(i, j) != y.get(i, j) {
                first = Some(first.map_or(i + j, |f| f.min(i + j)));
            }
        }
    }
    Ok(distance_from(first, x.cols().min(x.rows())))
}

/// `δ(u, v) = 2^-l` with `l` the length of the longest common prefix.
pub fn word_distance<T: PartialEq>(u: &[T], v: &[T]) -> Result<Distance> {
    if u.len() != v.len() {
        return Err(Error::ShapeMismatch(format!(
            "word lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    let first = u.iter().zip(v).position(|(a, b)| a != b);
    Ok(distance_from(first, u.len()))
}

/// The ordinal `ω·n + m < ω²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalIndex {
    pub n: usize,
    pub m: usize,
}

/// The `k`-th position (0-based) of the row-major walk over a depth-`depth`
/// window: rows bottom to top, each row left to right.
pub fn ordinal_index(k: usize, depth: usize) -> Result<OrdinalIndex> {
    if depth == 0 {
        return Err(Error::NonPositive);
    }
    if k >= depth * depth {
        return Err(Error::OutOfWindow(format!(
            "position {k} in a depth-{depth} window"
        )));
    }
    Ok(OrdinalIndex {
        n: k / depth,
        m: k % depth,
    })
}

/// `p̄(ω·n + m) = p(m+1, n+1)`.
pub fn row_major(p: &PictureWindow, o: OrdinalIndex) -> Result<Letter> {
    let d = depth_of(p)?;
    if o.m >= d || o.n >= d {
        return Err(Error::OutOfWindow(format!(
            "ω·{} + {} in a depth-{d} window",
            o.n, o.m
        )));
    }
    Ok(p.get(o.m + 1, o.n + 1))
}

/// The `p̄` stream of a window in iteration order.
pub fn row_major_stream(p: &PictureWindow) -> Result<Vec<Letter>> {
    let d = depth_of(p)?;
    (0..d * d)
        .map(|k| row_major(p, ordinal_index(k, d)?))
        .collect()
}

pub fn row_major_decode(stream: &[Letter], depth: usize) -> Result<PictureWindow> {
    if stream.len() != depth * depth {
        return Err(Error::LengthMismatch {
            left: stream.len(),
            right: depth * depth,
        });
    }
    let rows: Vec<Vec<Letter>> = stream
        .chunks(depth.max(1))
        .map(<[Letter]>::to_vec)
        .collect();
    PictureWindow::omega_prefix(depth, &rows)
}

/// A prefix of a run coded over `{0, 1}`: fixed-width big-endian state
/// indices in pairing order of the cells `(i, j) ≥ (1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunCode {
    pub bits: Vec<bool>,
    pub width: u32,
}

impl RunCode {
    pub fn codes(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits
            .chunks(self.width as usize)
            .map(|c| c.iter().fold(0u64, |acc, &b| acc << 1 | u64::from(b)))
    }
}

/// `max(1, ⌈log₂ |Q|⌉)`.
pub fn default_width(states: usize) -> u32 {
    let mut w = 1;
    while (1usize << w) < states {
        w += 1;
    }
    w
}

/// Cells `(i, j) ≥ (1, 1)` whose pairing index is at most `n(n+1)/2`, in
/// pairing order: exactly the cells a depth-`n` window determines as a
/// contiguous code prefix.
pub fn determined_cells(n: usize) -> Vec<(usize, usize)> {
    (1..=(n * (n + 1) / 2) as u64)
        .map(|k| {
            let (i, j) = unpair(k).expect("positive");
            (i as usize, j as usize)
        })
        .collect()
}

pub fn encode_run(run: &RunAssignment, states: usize, width: Option<u32>) -> Result<RunCode> {
    let width = width.unwrap_or_else(|| default_width(states));
    if width == 0 || width > 63 || (1u64 << width) < states as u64 {
        return Err(Error::WidthOverflow { states, width });
    }
    let n = run.cols().min(run.rows()).saturating_sub(1);
    let mut bits = Vec::new();
    for (i, j) in determined_cells(n) {
        let q = run.get(i, j).0 as u64;
        if q >= states as u64 {
            return Err(Error::Invariant(format!("state index {q} outside Q")));
        }
        bits.extend((0..width).rev().map(|b| q >> b & 1 == 1));
    }
    Ok(RunCode { bits, width })
}

/// Inverse of [`encode_run`] on the determined cells.
pub fn decode_run(code: &RunCode, states: usize) -> Result<Vec<((usize, usize), State)>> {
    if code.width == 0 || !code.bits.len().is_multiple_of(code.width as usize) {
        return Err(Error::Invariant(
            "code length is not a multiple of the width".into(),
        ));
    }
    code.codes()
        .enumerate()
        .map(|(k, q)| {
            if q >= states as u64 {
                return Err(Error::Invariant(format!("code {q} names no state")));
            }
            let (i, j) = unpair(k as u64 + 1)?;
            Ok(((i as usize, j as usize), State(q as u16)))
        })
        .collect()
}

/// Depth of the smallest window that determines `cells` coded cells.
pub fn depth_for_cells(cells: usize) -> Option<usize> {
    (0..)
        .find(|&n| n * (n + 1) / 2 >= cells)
        .filter(|&n| n * (n + 1) / 2 == cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_values() {
        assert_eq!(pair(1, 1).unwrap(), 1);
        assert_eq!(pair(1, 2).unwrap(), 2);
        assert_eq!(pair(2, 1).unwrap(), 3);
        assert_eq!(pair(0, 1), Err(Error::NonPositive));
        for i in 1..=100 {
            for j in 1..=100 {
                assert_eq!(unpair(pair(i, j).unwrap()).unwrap(), (i, j));
            }
        }
    }

    #[test]
    fn single_one_lands_at_its_cell() {
        let n = 4;
        let len = pair(4, 4).unwrap() as usize;
        let mut sigma = vec![Letter(1); len];
        sigma[pair(2, 3).unwrap() as usize - 1] = Letter(2);
        let p = word_to_picture(&sigma, n).unwrap();
        for j in 1..=n {
            for i in 1..=n {
                assert_eq!(p.get(i, j) == Letter(2), (i, j) == (2, 3));
            }
        }
        assert_eq!(slice_family(&sigma, 2).unwrap()[2], Letter(2));
        assert_eq!(
            word_to_picture(&sigma[..len - 1], n),
            Err(Error::PrefixTooShort {
                required: len,
                got: len - 1
            })
        );
    }

    #[test]
    fn constant_slices() {
        let sigma = vec![7u8; 60];
        for i in 1..5 {
            assert!(slice_family(&sigma, i).unwrap().iter().all(|&c| c == 7));
        }
        assert!(!slices_distinct(&sigma, 3).unwrap());
        // σ(k) = k separates every pair of slices
        let ids: Vec<u64> = (1..=60).collect();
        assert!(slices_distinct(&ids, 5).unwrap());
    }

    #[test]
    fn phi_counts_and_round_trip() {
        let mut seen = std::collections::BTreeSet::new();
        for bits in 0..16u32 {
            let rows: Vec<Vec<Letter>> = (0..2)
                .map(|j| {
                    (0..2)
                        .map(|i| Letter(1 + (bits >> (2 * j + i) & 1) as u16))
                        .collect()
                })
                .collect();
            let p = PictureWindow::omega_prefix(2, &rows).unwrap();
            let g = phi(&p).unwrap();
            assert_eq!(phi_inverse(&g).unwrap(), p);
            seen.insert(g.cells().to_vec());
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn metric_cases() {
        assert_eq!(word_distance(&[1, 2], &[2, 2]).unwrap().window, 1.0);
        let x = Grid::filled(4, 4, 0);
        let mut y = x.clone();
        y.set(1, 2, 1);
        let d = grid_distance(&x, &y).unwrap();
        assert_eq!(d.window, 0.125);
        assert!(d.exact);
        let same = grid_distance(&x, &x).unwrap();
        assert_eq!(
            (same.window, same.upper, same.exact),
            (0.0, 1.0 / 16.0, false)
        );
        let mut far = x.clone();
        far.set(3, 3, 1);
        let d = grid_distance(&x, &far).unwrap();
        assert!(!d.exact && d.upper == 1.0 / 16.0);
        assert!(grid_distance(&x, &Grid::filled(3, 4, 0)).is_err());
    }

    #[test]
    fn row_major_formula() {
        let rows: Vec<Vec<Letter>> = (0..6)
            .map(|j| (0..6).map(|i| Letter((i + 6 * j) as u16 + 1)).collect())
            .collect();
        let p = PictureWindow::omega_prefix(6, &rows).unwrap();
        assert_eq!(
            row_major(&p, OrdinalIndex { n: 0, m: 0 }).unwrap(),
            p.get(1, 1)
        );
        assert_eq!(
            row_major(&p, OrdinalIndex { n: 2, m: 5 }).unwrap(),
            p.get(6, 3)
        );
        assert!(matches!(
            row_major(&p, OrdinalIndex { n: 6, m: 0 }),
            Err(Error::OutOfWindow(_))
        ));
        let s = row_major_stream(&p).unwrap();
        assert_eq!(row_major_decode(&s, 6).unwrap(), p);
    }

    #[test]
    fn run_codes() {
        let run = Grid::filled(4, 4, State(0));
        let c = encode_run(&run, 1, None).unwrap();
        assert_eq!(c.bits, vec![false; 6]);
        let mut two = Grid::filled(4, 4, State(0));
        two.set(1, 2, State(1));
        let c = encode_run(&two, 2, None).unwrap();
        let ones: Vec<usize> = c
            .bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(|(k, _)| k + 1)
            .collect();
        assert_eq!(ones, vec![2]);
        let decoded = decode_run(&c, 2).unwrap();
        for ((i, j), q) in decoded {
            assert_eq!(q, *two.get(i, j));
        }
        assert_eq!(
            encode_run(&run, 5, Some(2)),
            Err(Error::WidthOverflow {
                states: 5,
                width: 2
            })
        );
        assert_eq!(default_width(5), 3);
        assert_eq!(depth_for_cells(6), Some(3));
    }
}
