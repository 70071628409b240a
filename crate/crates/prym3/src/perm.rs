//! Permutations of `{0..degree}` with cycle-notation I/O.
//!
//! Composition is left-to-right throughout the crate: `(p * q)(x) = q(p(x))`,
//! so a product of monodromy generators reads in path order. Cycle strings use
//! 1-based symbols, e.g. `"(1 2)(3 4)(5 6)"`; the identity prints as `"()"`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("symbol {symbol} out of range 1..={degree}")]
    SymbolOutOfRange { symbol: usize, degree: usize },
    #[error("symbol {0} appears twice in cycle notation")]
    RepeatedSymbol(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("images are not a bijection of the symbols")]
    NotBijective,
}

/// A permutation stored by its image sequence on `0..degree`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            if im >= n || seen[im] {
                return Err(PermError::NotBijective);
            }
            seen[im] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images (`images[k-1]` is the image of
    /// symbol `k`).
    pub fn from_one_based_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        for &im in images {
            if im < 1 || im > n {
                return Err(PermError::SymbolOutOfRange {
                    symbol: im,
                    degree: n,
                });
            }
        }
        Self::from_images(images.iter().map(|&im| im - 1).collect())
    }

    /// Parses whitespace-tolerant disjoint-cycle notation with 1-based symbols.
    ///
    /// Empty input and `"()"` both denote the identity; symbols absent from
    /// the text are fixed. Cycles must be disjoint.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut chars = text.chars().peekable();
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {}
                Some(c) => {
                    return Err(PermError::Malformed(format!(
                        "expected '(' but found {c:?}"
                    )))
                }
            }
            let mut cycle: Vec<usize> = Vec::new();
            loop {
                while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                    chars.next();
                }
                match chars.peek() {
                    Some(')') => {
                        chars.next();
                        break;
                    }
                    Some(c) if c.is_ascii_digit() => {
                        let mut sym = 0usize;
                        while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                            sym = sym * 10 + chars.next().unwrap().to_digit(10).unwrap() as usize;
                        }
                        if sym < 1 || sym > degree {
                            return Err(PermError::SymbolOutOfRange {
                                symbol: sym,
                                degree,
                            });
                        }
                        if seen[sym - 1] {
                            return Err(PermError::RepeatedSymbol(sym));
                        }
                        seen[sym - 1] = true;
                        cycle.push(sym - 1);
                    }
                    Some(c) => {
                        return Err(PermError::Malformed(format!(
                            "unexpected character {c:?} inside cycle"
                        )))
                    }
                    None => {
                        return Err(PermError::Malformed("unclosed cycle".into()));
                    }
                }
            }
            for k in 0..cycle.len() {
                images[cycle[k]] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&im| im + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// Left-to-right composition: `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&im| other.images[im]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Permutation { images }
    }

    /// Multiplicative order of the permutation.
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self).expect("equal degrees");
            k += 1;
        }
        k
    }

    /// Full cycle decomposition including fixed points, each cycle starting at
    /// its minimal point, cycles sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, counting fixed points as 1-cycles.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths sorted descending, e.g. `[2, 2, 2, 1, 1, 1]`.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Conjugate `x^{-1} * self * x` under left-to-right composition.
    pub fn conjugate_by(&self, x: &Permutation) -> Result<Permutation, PermError> {
        x.inverse().compose(self)?.compose(x)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (k, &x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}
