//! Hadamard matrices: Sylvester doubling and the Paley construction over
//! GF(27), plus the even-parity row normalization that embeds the rows into
//! the Newman universe.

use crate::states::{FamilyTag, Ray, VectorSet};
use crate::{Error, Result};

/// A ±1 matrix with pairwise orthogonal rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    n: usize,
    rows: Vec<Vec<i8>>,
}

impl HadamardMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> i8 {
        self.rows[r][c]
    }

    fn assert_hadamard(&self) {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let dot: i32 = (0..self.n)
                    .map(|k| self.rows[i][k] as i32 * self.rows[j][k] as i32)
                    .sum();
                assert_eq!(dot, 0, "rows {i} and {j} are not orthogonal");
            }
        }
    }

    /// Number of positions where rows `i` and `j` agree.
    pub fn row_agreement(&self, i: usize, j: usize) -> usize {
        (0..self.n)
            .filter(|&k| self.rows[i][k] == self.rows[j][k])
            .count()
    }

    /// Negates columns until row 0 is all +1. For even order every other row
    /// then agrees with row 0 in exactly n/2 places, so all rows end up with
    /// an even number of −1 entries.
    pub fn normalize_even_rows(&mut self) {
        for c in 0..self.n {
            if self.rows[0][c] == -1 {
                for r in 0..self.n {
                    self.rows[r][c] = -self.rows[r][c];
                }
            }
        }
        for r in 0..self.n {
            let minus = self.rows[r].iter().filter(|&&x| x == -1).count();
            assert!(minus % 2 == 0, "row {r} still has odd −1 count");
        }
    }

    /// True iff every row has an even number of −1 entries.
    pub fn rows_have_even_parity(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().filter(|&&x| x == -1).count() % 2 == 0)
    }

    /// Rows as canonical rays.
    pub fn rows_as_rays(&self) -> Result<VectorSet> {
        let rays: Vec<Ray> = self
            .rows
            .iter()
            .map(|row| Ray::from_ints(&row.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .collect::<Result<_>>()?;
        VectorSet::new(self.n, FamilyTag::HadamardRows, rays)
    }

    /// Text format: one row per line, `+`/`-` characters.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for row in &self.rows {
            for &x in row {
                out.push(if x == 1 { '+' } else { '-' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<HadamardMatrix> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Vec<i8> = line
                .chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(Error::Parse(format!("bad Hadamard entry {other:?}"))),
                })
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("Hadamard matrix is not square".into()));
        }
        let h = HadamardMatrix { n, rows };
        h.assert_hadamard();
        Ok(h)
    }
}

/// Sylvester doubling: order 2^k, built from [[H, H], [H, −H]].
///
/// For k ≥ 2 each row already has an even number of −1 entries.
pub fn sylvester(k: usize) -> Result<HadamardMatrix> {
    if k > 10 {
        return Err(Error::BadFamilyParameter(format!(
            "Sylvester order 2^{k} exceeds the ceiling 2^10"
        )));
    }
    let mut rows: Vec<Vec<i8>> = vec![vec![1]];
    for _ in 0..k {
        let half = rows.len();
        let mut next = Vec::with_capacity(2 * half);
        for r in 0..half {
            let mut top: Vec<i8> = rows[r].clone();
            top.extend(rows[r].iter().copied());
            next.push(top);
        }
        for r in 0..half {
            let mut bottom: Vec<i8> = rows[r].clone();
            bottom.extend(rows[r].iter().map(|&x| -x));
            next.push(bottom);
        }
        rows = next;
    }
    let h = HadamardMatrix { n: 1 << k, rows };
    h.assert_hadamard();
    Ok(h)
}

// ---------------------------------------------------------------------------
// GF(27) and the Paley construction
// ---------------------------------------------------------------------------

/// GF(3^3) as polynomials a0 + a1·x + a2·x² over GF(3), reduced by
/// x³ = x + 2. Elements are indexed 0..27 as a0 + 3·a1 + 9·a2.
struct Gf27 {
    mul: [[u8; 27]; 27],
}

impl Gf27 {
    fn new() -> Self {
        let mut mul = [[0u8; 27]; 27];
        for a in 0..27usize {
            for b in 0..27usize {
                mul[a][b] = gf27_mul(a as u8, b as u8);
            }
        }
        Gf27 { mul }
    }

    fn sub(&self, a: u8, b: u8) -> u8 {
        let (a0, a1, a2) = digits(a);
        let (b0, b1, b2) = digits(b);
        from_digits((a0 + 3 - b0) % 3, (a1 + 3 - b1) % 3, (a2 + 3 - b2) % 3)
    }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, −1 otherwise.
    fn chi(&self, a: u8) -> i8 {
        if a == 0 {
            return 0;
        }
        for b in 1..27u8 {
            if self.mul[b as usize][b as usize] == a {
                return 1;
            }
        }
        -1
    }
}

fn digits(a: u8) -> (u8, u8, u8) {
    (a % 3, (a / 3) % 3, a / 9)
}

fn from_digits(d0: u8, d1: u8, d2: u8) -> u8 {
    d0 + 3 * d1 + 9 * d2
}

fn gf27_mul(a: u8, b: u8) -> u8 {
    let (a0, a1, a2) = digits(a);
    let (b0, b1, b2) = digits(b);
    // schoolbook product, coefficients of x^0..x^4
    let mut c = [0u16; 5];
    let av = [a0 as u16, a1 as u16, a2 as u16];
    let bv = [b0 as u16, b1 as u16, b2 as u16];
    for (i, &ai) in av.iter().enumerate() {
        for (j, &bj) in bv.iter().enumerate() {
            c[i + j] += ai * bj;
        }
    }
    // reduce with x³ = x + 2 (so x⁴ = x² + 2x)
    c[1] += c[3];
    c[0] += 2 * c[3];
    c[2] += c[4];
    c[1] += 2 * c[4];
    from_digits((c[0] % 3) as u8, (c[1] % 3) as u8, (c[2] % 3) as u8)
}

/// Order-28 Hadamard matrix from quadratic residues of GF(27), with rows
/// normalized to even −1 parity (membership in the dimension-28 Newman
/// universe).
pub fn paley_h28() -> HadamardMatrix {
    let field = Gf27::new();
    let q = 27usize;
    // bordered skew matrix S; H = I + S
    let n = q + 1;
    let mut rows = vec![vec![0i8; n]; n];
    rows[0][0] = 1;
    for j in 1..n {
        rows[0][j] = 1;
        rows[j][0] = -1;
    }
    for i in 1..n {
        for j in 1..n {
            if i == j {
                rows[i][j] = 1; // identity on the diagonal, chi(0) = 0 off it
            } else {
                rows[i][j] = field.chi(field.sub((i - 1) as u8, (j - 1) as u8));
            }
        }
    }
    let mut h = HadamardMatrix { n, rows };
    h.assert_hadamard();
    h.normalize_even_rows();
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::newman_states;

    #[test]
    fn sylvester_base_cases() {
        let h1 = sylvester(1).unwrap();
        assert_eq!(h1.rows(), &[vec![1, 1], vec![1, -1]]);
        let h2 = sylvester(2).unwrap();
        assert_eq!(h2.order(), 4);
        assert!(h2.rows_have_even_parity());
    }

    #[test]
    fn sylvester_h32_even_parity() {
        let h = sylvester(5).unwrap();
        assert_eq!(h.order(), 32);
        assert!(h.rows_have_even_parity());
        // rows are pairwise orthogonal rays
        let vs = h.rows_as_rays().unwrap();
        assert_eq!(vs.len(), 32);
        let g = vs.orthogonality_graph(0.0).unwrap();
        assert_eq!(g.edge_count(), 32 * 31 / 2);
    }

    #[test]
    fn sylvester_h32_matches_tensor_rays() {
        // H_32 rows coincide, as rays, with u_i ⊗ u_j ⊗ v_k for u in the
        // dimension-4 Newman set and v in {(1,1), (1,−1)}.
        let h = sylvester(5).unwrap();
        let mut from_rows: Vec<Ray> = h.rows_as_rays().unwrap().rays;
        from_rows.sort();

        let n4 = newman_states(4).unwrap();
        let vs = [[1i64, 1], [1, -1]];
        let mut tensored = Vec::new();
        for u in &n4.rays {
            for w in &n4.rays {
                for v in &vs {
                    let mut comps = Vec::with_capacity(32);
                    for a in u.components() {
                        for b in w.components() {
                            for &c in v {
                                comps.push(a.re * b.re * c);
                            }
                        }
                    }
                    tensored.push(Ray::from_ints(&comps).unwrap());
                }
            }
        }
        tensored.sort();
        tensored.dedup();
        assert_eq!(from_rows, tensored);
    }

    #[test]
    fn paley_h28_shape() {
        let h = paley_h28();
        assert_eq!(h.order(), 28);
        assert!(h.rows_have_even_parity());
        for i in 0..28 {
            for j in (i + 1)..28 {
                assert_eq!(h.row_agreement(i, j), 14);
            }
        }
    }

    #[test]
    fn paley_rows_clique_in_newman_universe() {
        let h = paley_h28();
        let vs = h.rows_as_rays().unwrap();
        assert_eq!(vs.len(), 28);
        let g = vs.orthogonality_graph(0.0).unwrap();
        assert_eq!(g.edge_count(), 28 * 27 / 2);
        // Newman membership: ±1 entries with an even number of −1 per row
        // (the ray canonicalization may flip the global sign; parity is
        // preserved because the dimension is a multiple of 4)
        for ray in &vs.rays {
            let minus = ray.components().iter().filter(|c| c.re == -1).count();
            assert!(minus % 2 == 0);
            assert!(ray.components().iter().all(|c| c.re.abs() == 1 && c.im == 0));
        }
    }

    #[test]
    fn hadamard_text_round_trip() {
        let h = sylvester(3).unwrap();
        let text = h.to_text();
        let back = HadamardMatrix::from_text(&text).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn gf27_is_a_field() {
        let f = Gf27::new();
        // 13 nonzero squares, 13 nonsquares
        let squares: Vec<u8> = (1..27).filter(|&a| f.chi(a) == 1).collect();
        assert_eq!(squares.len(), 13);
        // multiplicative closure spot check: x · x² = x³ = x + 2
        assert_eq!(f.mul[3][9], from_digits(2, 1, 0));
    }
}
