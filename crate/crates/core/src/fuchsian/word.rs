use std::fmt;

/// Letters of the free group on two generators: `A = 0`, `B = 1`, `A⁻¹ = 2`, `B⁻¹ = 3`.
pub type Letter = u8;

pub const LETTERS: [Letter; 4] = [0, 1, 2, 3];

#[inline]
pub fn inverse_letter(l: Letter) -> Letter {
    l ^ 2
}

#[inline]
pub fn letter_gen(l: Letter) -> u8 {
    l & 1
}

#[inline]
pub fn letter_sign(l: Letter) -> i32 {
    if l < 2 {
        1
    } else {
        -1
    }
}

/// A maximal run `gen^exp` with `exp != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Syllable {
    pub gen: u8,
    pub exp: i32,
}

/// Canonical representative of a cyclic word: the lexicographically least
/// rotation of its syllable sequence after cyclic merging.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<Syllable>);

pub fn parse_letters(s: &str) -> Option<Vec<Letter>> {
    s.chars()
        .map(|c| match c {
            'A' => Some(0),
            'B' => Some(1),
            'a' => Some(2),
            'b' => Some(3),
            _ => None,
        })
        .collect()
}

pub fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[1] != inverse_letter(w[0]))
}

pub fn is_cyclically_reduced(letters: &[Letter]) -> bool {
    !letters.is_empty()
        && is_reduced(letters)
        && (letters.len() == 1 || letters[0] != inverse_letter(letters[letters.len() - 1]))
}

pub fn syllables_of(letters: &[Letter]) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    for &l in letters {
        let (g, s) = (letter_gen(l), letter_sign(l));
        match out.last_mut() {
            Some(last) if last.gen == g && last.exp.signum() == s => last.exp += s,
            _ => out.push(Syllable { gen: g, exp: s }),
        }
    }
    out
}

/// Start index of the lexicographically least rotation (Booth).
fn least_rotation_start<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let mut fail = vec![-1isize; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && *sj != s[(k + i as usize + 1) % n] {
            if *sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && *sj != s[k % n] {
            if *sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n.max(1)
}

fn least_rotation(s: &[Syllable]) -> Vec<Syllable> {
    let best = least_rotation_start(s);
    s[best..].iter().chain(s[..best].iter()).copied().collect()
}

/// Smallest `p` dividing `s.len()` with `s` made of `s.len()/p` copies of `s[..p]`.
fn primitive_period<T: Eq>(s: &[T]) -> usize {
    let m = s.len();
    let mut pi = vec![0usize; m];
    for i in 1..m {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    let p = m - pi[m - 1];
    if m % p == 0 {
        p
    } else {
        m
    }
}

impl CyclicWord {
    /// Builds the canonical class of a cyclically reduced syllable sequence.
    /// Returns `None` for the empty word or a word that is not cyclically reduced.
    pub fn from_syllables(syl: &[Syllable]) -> Option<Self> {
        if syl.is_empty() {
            return None;
        }
        let mut s = syl.to_vec();
        if s.len() > 1 {
            let (f, l) = (s[0], s[s.len() - 1]);
            if f.gen == l.gen {
                if f.exp.signum() != l.exp.signum() {
                    return None;
                }
                s[0].exp += l.exp;
                s.pop();
            }
        }
        Some(CyclicWord(least_rotation(&s)))
    }

    pub fn from_letters(letters: &[Letter]) -> Option<Self> {
        if !is_cyclically_reduced(letters) {
            return None;
        }
        Self::from_syllables(&syllables_of(letters))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn letter_len(&self) -> usize {
        self.0.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.letter_len());
        for s in &self.0 {
            let l = if s.exp > 0 { s.gen } else { s.gen + 2 };
            out.extend(std::iter::repeat(l).take(s.exp.unsigned_abs() as usize));
        }
        out
    }

    /// Primitive root and power: `self = root^k`.
    pub fn root(&self) -> (CyclicWord, u32) {
        let s = &self.0;
        if s.len() == 1 {
            let e = s[0].exp;
            let r = Syllable { gen: s[0].gen, exp: e.signum() };
            return (CyclicWord(vec![r]), e.unsigned_abs());
        }
        let p = primitive_period(s);
        (CyclicWord(s[..p].to_vec()), (s.len() / p) as u32)
    }

    pub fn is_primitive(&self) -> bool {
        self.root().1 == 1
    }

    pub fn inverse(&self) -> CyclicWord {
        let rev: Vec<Syllable> = self.0.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect();
        CyclicWord(least_rotation(&rev))
    }

    /// Representative shared by a class and its inverse class.
    pub fn unoriented(&self) -> CyclicWord {
        let inv = self.inverse();
        if inv < *self {
            inv
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for CyclicWord {
    /// `A`, `B`, `a = A⁻¹`, `b = B⁻¹`, each followed by a repeat count when above one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            let c = match (s.gen, s.exp > 0) {
                (0, true) => 'A',
                (1, true) => 'B',
                (0, false) => 'a',
                _ => 'b',
            };
            write!(f, "{c}")?;
            if s.exp.abs() > 1 {
                write!(f, "{}", s.exp.abs())?;
            }
        }
        Ok(())
    }
}
