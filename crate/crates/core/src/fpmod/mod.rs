//! Finitely presented modules over a Euclidean ring `R` or a quotient `R/(f)`.
//!
//! A module is `R^g / span(P)` for a `g × r` relation matrix `P`. Modules over
//! `A = R/(f)` carry the relations `f·e_i` explicitly. Every `R`-linear map
//! between `A`-modules is `A`-linear and `⊗_A`, `Hom_A` agree with their
//! `R`-counterparts on `A`-modules, so all computations run over `R`.

mod hom;
mod ops;

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::linalg::{column_echelon, kernel_basis, smith_normal_form, Matrix, Solver};
use crate::ring::EuclideanDomain;

pub use hom::{curry, hom_module, HomModule};
pub use ops::{direct_sum, pullback, pushout, tensor, tensor_maps, Cokernel, DirectSum, Image, Kernel, Pullback, Pushout, Submodule};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("map is not well defined: relation column {column} of the source is not sent into the target relations")]
    IllDefined { column: usize },
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    Shape {
        expected: (usize, usize),
        got: (usize, usize),
    },
    #[error("maps are not composable")]
    NotComposable,
    #[error("square does not commute")]
    NotCommuting,
}

/// `R` or `R/(f)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<R: EuclideanDomain> {
    base: R,
    modulus: Option<R::Elem>,
}

impl<R: EuclideanDomain> Algebra<R> {
    pub fn base_ring(base: R) -> Self {
        Self {
            base,
            modulus: None,
        }
    }

    /// `R/(f)`; the modulus is stored as its canonical associate.
    ///
    /// Panics if `f` is zero or a unit.
    pub fn quotient(base: R, f: R::Elem) -> Self {
        assert!(!base.is_zero(&f) && !base.is_unit(&f), "modulus must be a nonzero non-unit");
        let f = base.canonical(&f);
        Self {
            base,
            modulus: Some(f),
        }
    }

    pub fn ring(&self) -> &R {
        &self.base
    }

    pub fn modulus(&self) -> Option<&R::Elem> {
        self.modulus.as_ref()
    }

    /// Reduces an element to its remainder modulo `f`.
    pub fn reduce(&self, a: &R::Elem) -> R::Elem {
        match &self.modulus {
            Some(f) => self.base.div_rem(a, f).1,
            None => a.clone(),
        }
    }

    pub fn describe(&self) -> alloc::string::String {
        match &self.modulus {
            None => self.base.describe(),
            Some(f) => alloc::format!("{}/({})", self.base.describe(), self.base.display(f)),
        }
    }
}

/// `R^gens / span(rels)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FpModule<R: EuclideanDomain> {
    alg: Algebra<R>,
    gens: usize,
    rels: Matrix<R>,
}

impl<R: EuclideanDomain> FpModule<R> {
    /// Module with the given relation columns; over `R/(f)` the relations
    /// `f·e_i` are appended.
    pub fn new(alg: &Algebra<R>, gens: usize, rels: Matrix<R>) -> Result<Self, FpError> {
        if rels.rows() != gens {
            return Err(FpError::Shape {
                expected: (gens, rels.cols()),
                got: rels.shape(),
            });
        }
        let rels = match &alg.modulus {
            Some(f) => rels.hconcat(&Matrix::identity(alg.ring(), gens).scale(f)),
            None => rels,
        };
        let rels = column_echelon(&rels);
        Ok(Self {
            alg: alg.clone(),
            gens,
            rels,
        })
    }

    /// Relations are taken as given; the caller guarantees the module is
    /// annihilated by the modulus.
    pub(crate) fn raw(alg: &Algebra<R>, gens: usize, rels: Matrix<R>) -> Self {
        debug_assert_eq!(rels.rows(), gens);
        Self {
            alg: alg.clone(),
            gens,
            rels: column_echelon(&rels),
        }
    }

    pub fn zero(alg: &Algebra<R>) -> Self {
        Self::raw(alg, 0, Matrix::zeros(alg.ring(), 0, 0))
    }

    /// `A^n`.
    pub fn free(alg: &Algebra<R>, n: usize) -> Self {
        Self::new(alg, n, Matrix::zeros(alg.ring(), n, 0)).expect("shape")
    }

    /// `A/(d)`.
    pub fn cyclic(alg: &Algebra<R>, d: R::Elem) -> Self {
        Self::new(alg, 1, Matrix::column_vector(alg.ring(), alloc::vec![d])).expect("shape")
    }

    /// `⊕ A/(d_i)`.
    pub fn diagonal(alg: &Algebra<R>, ds: &[R::Elem]) -> Self {
        let n = ds.len();
        let r = alg.ring();
        let rels = Matrix::from_fn(r, n, n, |i, j| if i == j { ds[i].clone() } else { r.zero() });
        Self::new(alg, n, rels).expect("shape")
    }

    pub fn algebra(&self) -> &Algebra<R> {
        &self.alg
    }

    pub fn ring(&self) -> &R {
        self.alg.ring()
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn rels(&self) -> &Matrix<R> {
        &self.rels
    }

    pub fn invariant_factors(&self) -> InvariantFactors<R> {
        let snf = smith_normal_form(&self.rels);
        let r = self.ring();
        let torsion = snf
            .invariants()
            .into_iter()
            .filter(|d| !r.is_unit(d))
            .collect();
        InvariantFactors {
            free_rank: self.gens - snf.rank,
            torsion,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.invariant_factors().is_zero()
    }

    /// Abstract isomorphism via the structure theorem.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.invariant_factors() == other.invariant_factors()
    }

    /// Is the vector zero in this module?
    pub fn is_zero_elem(&self, v: &[R::Elem]) -> bool {
        Solver::new(&self.rels).contains(v)
    }

    /// Presentation `⊕ R/(d_i) ⊕ R^k` with unit factors dropped, plus
    /// mutually inverse maps to and from `self`.
    pub fn simplify(&self) -> Simplified<R> {
        let snf = smith_normal_form(&self.rels);
        let r = self.ring();
        let keep: Vec<usize> = (0..self.gens)
            .filter(|&i| i >= snf.rank || !r.is_unit(snf.d.get(i, i)))
            .collect();
        let torsion: Vec<usize> = keep.iter().copied().filter(|&i| i < snf.rank).collect();
        let mut rels = Matrix::zeros(r, keep.len(), torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            rels.set(c, c, snf.d.get(i, i).clone());
        }
        let module = FpModule::raw(&self.alg, keep.len(), rels);
        let to = ModuleMap::raw(self, &module, snf.u.select_rows(&keep));
        let from = ModuleMap::raw(&module, self, snf.u_inv.select_columns(&keep));
        Simplified { module, to, from }
    }

    /// Relations of the submodule generated by the columns of `k` (vectors in `R^gens`).
    pub(crate) fn relations_of(&self, k: &Matrix<R>) -> Matrix<R> {
        preimage(k, &self.rels)
    }
}

impl<R: EuclideanDomain> fmt::Display for FpModule<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_factors().display(self.ring()))
    }
}

/// `{x : F·x ∈ span(P)}` as generating columns.
pub(crate) fn preimage<R: EuclideanDomain>(f: &Matrix<R>, p: &Matrix<R>) -> Matrix<R> {
    let g = f.cols();
    let k = kernel_basis(&f.hconcat(p));
    k.select_rows(&(0..g).collect::<Vec<_>>()).without_zero_columns()
}

/// Output of [`FpModule::simplify`].
#[derive(Clone, Debug)]
pub struct Simplified<R: EuclideanDomain> {
    pub module: FpModule<R>,
    pub to: ModuleMap<R>,
    pub from: ModuleMap<R>,
}

/// Free rank plus torsion `d_1 | d_2 | …` (non-units, canonical).
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantFactors<R: EuclideanDomain> {
    pub free_rank: usize,
    pub torsion: Vec<R::Elem>,
}

impl<R: EuclideanDomain> InvariantFactors<R> {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl<R: EuclideanDomain> InvariantFactors<R> {
    pub fn display<'a>(&'a self, ring: &'a R) -> InvariantsDisplay<'a, R> {
        InvariantsDisplay { inv: self, ring }
    }
}

pub struct InvariantsDisplay<'a, R: EuclideanDomain> {
    inv: &'a InvariantFactors<R>,
    ring: &'a R,
}

impl<R: EuclideanDomain> fmt::Display for InvariantsDisplay<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "free {} torsion [", self.inv.free_rank)?;
        for (i, d) in self.inv.torsion.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            self.ring.fmt_elem(d, f)?;
        }
        write!(f, "]")
    }
}

/// A homomorphism given on generators: column `i` is the image of `e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<R: EuclideanDomain> {
    source: FpModule<R>,
    target: FpModule<R>,
    matrix: Matrix<R>,
}

impl<R: EuclideanDomain> ModuleMap<R> {
    /// Checks shapes and well-definedness.
    pub fn new(source: &FpModule<R>, target: &FpModule<R>, matrix: Matrix<R>) -> Result<Self, FpError> {
        if source.alg != target.alg {
            return Err(FpError::AlgebraMismatch);
        }
        if matrix.shape() != (target.gens, source.gens) {
            return Err(FpError::Shape {
                expected: (target.gens, source.gens),
                got: matrix.shape(),
            });
        }
        let images = matrix.mul(&source.rels);
        let solver = Solver::new(&target.rels);
        for (column, col) in images.columns().enumerate() {
            if !solver.contains(&col) {
                return Err(FpError::IllDefined { column });
            }
        }
        Ok(Self::raw(source, target, matrix))
    }

    pub(crate) fn raw(source: &FpModule<R>, target: &FpModule<R>, matrix: Matrix<R>) -> Self {
        debug_assert_eq!(matrix.shape(), (target.gens, source.gens));
        Self {
            source: source.clone(),
            target: target.clone(),
            matrix,
        }
    }

    pub fn identity(m: &FpModule<R>) -> Self {
        Self::raw(m, m, Matrix::identity(m.ring(), m.gens))
    }

    pub fn zero(source: &FpModule<R>, target: &FpModule<R>) -> Self {
        Self::raw(source, target, Matrix::zeros(source.ring(), target.gens, source.gens))
    }

    /// Multiplication by a scalar on `m`.
    pub fn scalar(m: &FpModule<R>, c: &R::Elem) -> Self {
        Self::raw(m, m, Matrix::identity(m.ring(), m.gens).scale(c))
    }

    pub fn source(&self) -> &FpModule<R> {
        &self.source
    }

    pub fn target(&self) -> &FpModule<R> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn ring(&self) -> &R {
        self.source.ring()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Self {
        assert!(first.target == self.source, "maps are not composable");
        Self::raw(&first.source, &self.target, self.matrix.mul(&first.matrix))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.source == other.source && self.target == other.target);
        Self::raw(&self.source, &self.target, self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.source == other.source && self.target == other.target);
        Self::raw(&self.source, &self.target, self.matrix.sub(&other.matrix))
    }

    pub fn neg(&self) -> Self {
        Self::raw(&self.source, &self.target, self.matrix.neg())
    }

    /// Image of a vector in the source generators.
    pub fn apply(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        self.matrix.mul_vec(v)
    }

    /// True if every generator maps into the target relations.
    pub fn is_zero(&self) -> bool {
        let solver = Solver::new(&self.target.rels);
        self.matrix.columns().all(|c| solver.contains(&c))
    }

    /// Equality as homomorphisms, not as matrices.
    pub fn same_as(&self, other: &Self) -> bool {
        self.source.gens == other.source.gens
            && self.target.gens == other.target.gens
            && Self::raw(&self.source, &self.target, self.matrix.sub(&other.matrix)).is_zero()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().module.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().module.is_zero()
    }

    /// Decides bijectivity; on success returns a certified two-sided inverse.
    pub fn is_iso(&self) -> IsoVerdict<R> {
        let ker = self.kernel().module.invariant_factors();
        let cok = self.cokernel().module.invariant_factors();
        if !ker.is_zero() || !cok.is_zero() {
            return IsoVerdict::No {
                kernel: ker,
                cokernel: cok,
            };
        }
        let r = self.ring();
        let solver = Solver::new(&self.matrix.hconcat(&self.target.rels));
        let g = self.source.gens;
        let mut cols = Vec::with_capacity(self.target.gens);
        for j in 0..self.target.gens {
            let mut e = alloc::vec![r.zero(); self.target.gens];
            e[j] = r.one();
            let x = solver
                .solve(&e)
                .expect("shape")
                .expect("surjective map has a preimage for every generator");
            cols.push(x[..g].to_vec());
        }
        let inv = Matrix::from_columns(r, g, &cols);
        let inverse = ModuleMap::new(&self.target, &self.source, inv).expect("inverse of an iso is well defined");
        debug_assert!(inverse.compose(self).same_as(&ModuleMap::identity(&self.source)));
        debug_assert!(self.compose(&inverse).same_as(&ModuleMap::identity(&self.target)));
        IsoVerdict::Yes { inverse }
    }
}

#[derive(Clone, Debug)]
pub enum IsoVerdict<R: EuclideanDomain> {
    Yes { inverse: ModuleMap<R> },
    No {
        kernel: InvariantFactors<R>,
        cokernel: InvariantFactors<R>,
    },
}

impl<R: EuclideanDomain> IsoVerdict<R> {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Yes { .. })
    }

    pub fn inverse(&self) -> Option<&ModuleMap<R>> {
        match self {
            IsoVerdict::Yes { inverse } => Some(inverse),
            IsoVerdict::No { .. } => None,
        }
    }
}
