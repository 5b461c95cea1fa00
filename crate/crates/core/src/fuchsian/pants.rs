use super::mobius::{cosh_dist, Mobius};
use super::word::{inverse_letter, CyclicWord, Letter, Syllable, LETTERS};
use crate::error::{domain, Error, Result};

/// Default ceiling on nonzero boundary lengths.
pub const DEFAULT_MAX_BOUNDARY: f64 = 7.3;
/// Reduced words up to this length are screened for elliptic or trivial elements.
pub const DEFAULT_CHECK_LEN: usize = 8;

/// Rank-2 group uniformizing a pair of pants with boundary lengths `ℓ₁, ℓ₂, ℓ₃`
/// (zero meaning a cusp). Generators `A`, `B` have `AB` as third boundary.
#[derive(Clone, Debug)]
pub struct PantsGroup {
    pub a: Mobius,
    pub b: Mobius,
    pub lengths: [f64; 3],
    /// Generators `A, B, A⁻¹, B⁻¹` conjugated so that the base point sits at `i`.
    pub(crate) framed: [Mobius; 4],
    pub(crate) base_point: (f64, f64),
}

impl PantsGroup {
    pub fn generator(&self, l: Letter) -> Mobius {
        match l {
            0 => self.a,
            1 => self.b,
            2 => self.a.inverse(),
            _ => self.b.inverse(),
        }
    }

    /// Like [`evaluate`](Self::evaluate) but with generators conjugated to the base-point frame.
    pub fn evaluate_framed(&self, letters: &[Letter]) -> Mobius {
        let mut m = Mobius::IDENTITY;
        for (i, &l) in letters.iter().enumerate() {
            m = m * self.framed[l as usize];
            if (i + 1) % 16 == 0 {
                m = m.renormalized();
            }
        }
        m
    }

    pub fn base_point(&self) -> (f64, f64) {
        self.base_point
    }

    /// Product of the letters, renormalized every 16 factors.
    pub fn evaluate(&self, letters: &[Letter]) -> Mobius {
        let mut m = Mobius::IDENTITY;
        for (i, &l) in letters.iter().enumerate() {
            m = m * self.generator(l);
            if (i + 1) % 16 == 0 {
                m = m.renormalized();
            }
        }
        m
    }

    pub fn boundary_roots() -> [CyclicWord; 3] {
        let s = |gen, exp| Syllable { gen, exp };
        [
            CyclicWord::from_syllables(&[s(0, 1)]).unwrap().unoriented(),
            CyclicWord::from_syllables(&[s(1, 1)]).unwrap().unoriented(),
            CyclicWord::from_syllables(&[s(0, 1), s(1, 1)]).unwrap().unoriented(),
        ]
    }

    /// Index of the boundary component whose class has this unoriented primitive root.
    pub fn boundary_index(root: &CyclicWord) -> Option<usize> {
        Self::boundary_roots().iter().position(|b| b == root)
    }

    /// True when the unoriented primitive root is a cusp (parabolic boundary).
    pub fn is_cusp_root(&self, root: &CyclicWord) -> bool {
        Self::boundary_index(root).is_some_and(|i| self.lengths[i] == 0.0)
    }

    pub fn cusp_count(&self) -> usize {
        self.lengths.iter().filter(|&&l| l == 0.0).count()
    }
}

pub fn pants_group(l1: f64, l2: f64, l3: f64) -> Result<PantsGroup> {
    pants_group_with([l1, l2, l3], DEFAULT_MAX_BOUNDARY, DEFAULT_CHECK_LEN)
}

pub fn pants_group_with(lengths: [f64; 3], max_boundary: f64, check_len: usize) -> Result<PantsGroup> {
    for (i, &l) in lengths.iter().enumerate() {
        if !(l >= 0.0) || !l.is_finite() {
            return Err(domain("pants_group", format!("boundary length l{} = {l} must be nonnegative", i + 1)));
        }
        if l > max_boundary {
            return Err(domain(
                "pants_group",
                format!("boundary length l{} = {l} exceeds the maximum {max_boundary}", i + 1),
            ));
        }
    }
    if !lengths.contains(&0.0) {
        return Err(domain("pants_group", "at least one boundary must be a cusp"));
    }
    if check_len < DEFAULT_CHECK_LEN {
        return Err(domain("pants_group", format!("check length {check_len} below {DEFAULT_CHECK_LEN}")));
    }
    let lam = (lengths[0] / 2.0).exp();
    let mu = (lengths[1] / 2.0).exp();
    let t = -2.0 * (lengths[2] / 2.0).cosh() - lam * mu - (lam * mu).recip();
    let a = Mobius::new(lam, 1.0, 0.0, lam.recip());
    let b = Mobius::new(mu, 0.0, t, mu.recip());
    let base_point = balanced_point(&a, &b);
    let frame = Mobius::new(base_point.1.sqrt(), base_point.0 / base_point.1.sqrt(), 0.0, base_point.1.sqrt().recip());
    let framed = [a, b, a.inverse(), b.inverse()].map(|g| g.conjugated_by(&frame).renormalized());
    let group = PantsGroup { a, b, lengths, framed, base_point };
    screen_short_words(&group, check_len)?;
    Ok(group)
}

/// Point minimizing `cosh d(z, Az) + cosh d(z, Bz)`; for the thrice-punctured
/// sphere this is the centre of the symmetric Dirichlet domain.
fn balanced_point(a: &Mobius, b: &Mobius) -> (f64, f64) {
    let cost = |p: [f64; 2]| {
        let z = (p[0], p[1].exp());
        cosh_dist(z, a.apply(z)) + cosh_dist(z, b.apply(z))
    };
    let p = nelder_mead(cost, [0.0, (0.5f64).ln()], 0.5, 400);
    (p[0], p[1].exp())
}

fn nelder_mead(f: impl Fn([f64; 2]) -> f64, start: [f64; 2], step: f64, iters: usize) -> [f64; 2] {
    let mut s = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut v = s.map(&f);
    for _ in 0..iters {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
        let (lo, mid, hi) = (idx[0], idx[1], idx[2]);
        if (v[hi] - v[lo]).abs() <= 1e-15 * v[lo].abs().max(1.0) {
            break;
        }
        let c = [(s[lo][0] + s[mid][0]) / 2.0, (s[lo][1] + s[mid][1]) / 2.0];
        let along = |t: f64| [c[0] + t * (s[hi][0] - c[0]), c[1] + t * (s[hi][1] - c[1])];
        let r = along(-1.0);
        let fr = f(r);
        if fr < v[lo] {
            let e = along(-2.0);
            let fe = f(e);
            if fe < fr {
                s[hi] = e;
                v[hi] = fe;
            } else {
                s[hi] = r;
                v[hi] = fr;
            }
        } else if fr < v[mid] {
            s[hi] = r;
            v[hi] = fr;
        } else {
            let k = along(0.5);
            let fk = f(k);
            if fk < v[hi] {
                s[hi] = k;
                v[hi] = fk;
            } else {
                for i in [mid, hi] {
                    s[i] = [(s[i][0] + s[lo][0]) / 2.0, (s[i][1] + s[lo][1]) / 2.0];
                    v[i] = f(s[i]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| v[i].total_cmp(&v[j])).unwrap();
    s[best]
}

fn screen_short_words(g: &PantsGroup, max_len: usize) -> Result<()> {
    let mut letters: Vec<Letter> = Vec::with_capacity(max_len);
    let mut mats: Vec<Mobius> = Vec::with_capacity(max_len);
    fn rec(g: &PantsGroup, letters: &mut Vec<Letter>, mats: &mut Vec<Mobius>, max_len: usize) -> Result<()> {
        for l in LETTERS {
            if letters.last().is_some_and(|&p| p == inverse_letter(l)) {
                continue;
            }
            let m = match mats.last() {
                Some(p) => *p * g.generator(l),
                None => g.generator(l),
            };
            letters.push(l);
            mats.push(m);
            check_word(g, letters, &m)?;
            if letters.len() < max_len {
                rec(g, letters, mats, max_len)?;
            }
            letters.pop();
            mats.pop();
        }
        Ok(())
    }
    rec(g, &mut letters, &mut mats, max_len)?;
    Ok(())
}

fn check_word(g: &PantsGroup, letters: &[Letter], m: &Mobius) -> Result<()> {
    let name = || CyclicWord::from_syllables(&super::word::syllables_of(letters)).map_or_else(
        || letters.iter().map(|&l| ['A', 'B', 'a', 'b'][l as usize]).collect(),
        |w| w.to_string(),
    );
    let tol = 1e-10 * m.frob_sq().sqrt().max(1.0);
    if m.frob_sq() < 2.0 + 1e-6 && m.is_sign_identity(1e-9) {
        return Err(Error::InvalidGroup { word: name(), kind: "the identity" });
    }
    let tr = m.trace().abs();
    if tr < 2.0 - tol {
        return Err(Error::InvalidGroup { word: name(), kind: "elliptic" });
    }
    if tr <= 2.0 + tol {
        let cusp = CyclicWord::from_syllables(&super::word::syllables_of(letters))
            .map(|w| g.is_cusp_root(&w.root().0.unoriented()))
            .unwrap_or(true);
        if !cusp {
            return Err(Error::InvalidGroup { word: name(), kind: "an accidental parabolic" });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thrice_punctured_sphere() {
        let g = pants_group(0.0, 0.0, 0.0).unwrap();
        assert_eq!(g.b.c, -4.0);
        assert!((g.a.trace() - 2.0).abs() < 1e-15);
        assert!(((g.a * g.b).trace() + 2.0).abs() < 1e-15);
        let (x, y) = g.base_point();
        assert!(x.abs() < 1e-6 && (y - 0.5).abs() < 1e-6, "{x} {y}");
    }

    #[test]
    fn two_boundaries_one_cusp() {
        let g = pants_group(1.0, 1.0, 0.0).unwrap();
        let want = 2.0 * 0.5f64.cosh();
        assert!((g.a.trace() - want).abs() < 1e-14);
        assert!((g.b.trace() - want).abs() < 1e-14);
        assert!(((g.a * g.b).trace() + 2.0).abs() < 1e-13);
    }

    #[test]
    fn third_boundary_trace() {
        let g = pants_group(0.0, 0.0, 1.0).unwrap();
        assert!((g.b.c - (-2.0 - 2.0 * 0.5f64.cosh())).abs() < 1e-15);
        assert!(((g.a * g.b).trace() + 2.0 * 0.5f64.cosh()).abs() < 1e-14);
    }

    #[test]
    fn rejects_uncusped_and_oversized() {
        assert!(pants_group(1.0, 1.0, 1.0).is_err());
        assert!(pants_group(8.0, 0.0, 0.0).is_err());
        assert!(pants_group(-1.0, 0.0, 0.0).is_err());
    }
}
