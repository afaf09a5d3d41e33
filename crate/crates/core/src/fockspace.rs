//! Truncated two-mode Fock space.
//!
//! Kets `|n₁,n₂⟩` with `n₁+n₂ ≤ N_max` are grouped by total number `n` into
//! blocks `F_n` of dimension `n+1`; inside a block the ket index is `n₁`.
//! Quantum states are block-diagonal operators ([`BlockOperator`]); ladder
//! operators and ket-bras that leave a block are [`GeneralOperator`]s.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::radialwaves::{check_kappa, RadialFunctionSpec, RadialKind};
use crate::scalar::Real;
use crate::su2::{CoherentPoint, WaveVector};

/// Kets with total boson number at most `cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    cutoff: usize,
}

impl FockBasis {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::InvalidParameter("Fock cutoff must be at least 1".into()));
        }
        Ok(Self { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn num_blocks(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1) * (self.cutoff + 2) / 2
    }

    /// Global index of `|n₁, n₂⟩`.
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        let n = n1 + n2;
        n * (n + 1) / 2 + n1
    }

    /// Inverse of [`index`](Self::index).
    pub fn ket(&self, index: usize) -> (usize, usize) {
        let mut n = 0;
        while (n + 1) * (n + 2) / 2 <= index {
            n += 1;
        }
        let n1 = index - n * (n + 1) / 2;
        (n1, n - n1)
    }

    pub fn kets(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.cutoff).flat_map(|n| (0..=n).map(move |n1| (n1, n - n1)))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BasisMismatch(self.cutoff, other.cutoff))
        }
    }
}

/// Block-diagonal operator: one `(n+1)×(n+1)` matrix per total number `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator<T> {
    basis: FockBasis,
    blocks: Vec<CMatrix<T>>,
}

impl<T: Real> BlockOperator<T> {
    pub fn zeros(basis: FockBasis) -> Self {
        let blocks = (0..basis.num_blocks()).map(|n| CMatrix::zeros(n + 1, n + 1)).collect();
        Self { basis, blocks }
    }

    pub fn identity(basis: FockBasis) -> Self {
        Self::identity_through(basis, basis.cutoff())
    }

    /// Identity on blocks `0..=last`, zero above.
    pub fn identity_through(basis: FockBasis, last: usize) -> Self {
        Self::from_fn(basis, |n| if n <= last { CMatrix::identity(n + 1) } else { CMatrix::zeros(n + 1, n + 1) })
    }

    /// `f(n̂)`: diagonal with value `f(n)` on block `n`.
    pub fn function_of_number(basis: FockBasis, f: impl Fn(usize) -> Complex<T>) -> Self {
        Self::from_fn(basis, |n| CMatrix::from_diagonal(&vec![f(n); n + 1]))
    }

    pub fn from_fn(basis: FockBasis, mut f: impl FnMut(usize) -> CMatrix<T>) -> Self {
        let blocks = (0..basis.num_blocks())
            .map(|n| {
                let b = f(n);
                assert_eq!((b.rows(), b.cols()), (n + 1, n + 1), "block {n} has the wrong shape");
                b
            })
            .collect();
        Self { basis, blocks }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn block(&self, n: usize) -> &CMatrix<T> {
        &self.blocks[n]
    }

    pub fn block_mut(&mut self, n: usize) -> &mut CMatrix<T> {
        &mut self.blocks[n]
    }

    pub fn blocks(&self) -> &[CMatrix<T>] {
        &self.blocks
    }

    /// Highest block with a non-zero entry.
    pub fn top_block(&self) -> Option<usize> {
        self.blocks.iter().rposition(|b| b.max_abs() > T::zero())
    }

    fn zip(&self, other: &Self, f: impl Fn(&CMatrix<T>, &CMatrix<T>) -> CMatrix<T>) -> Result<Self> {
        self.basis.check_same(&other.basis)?;
        Ok(Self { basis: self.basis, blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.matmul(b))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.commutator(b))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { basis: self.basis, blocks: self.blocks.iter().map(|b| b.scale(s)).collect() }
    }

    pub fn adjoint(&self) -> Self {
        Self { basis: self.basis, blocks: self.blocks.iter().map(|b| b.adjoint()).collect() }
    }

    /// Plain Hilbert–Schmidt norm over the given blocks.
    pub fn frobenius_norm_through(&self, last: usize) -> T {
        self.blocks[..=last.min(self.basis.cutoff())]
            .iter()
            .fold(T::zero(), |acc, b| {
                let f = b.frobenius_norm();
                acc + f * f
            })
            .sqrt()
    }

    pub fn frobenius_norm(&self) -> T {
        self.frobenius_norm_through(self.basis.cutoff())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.blocks.iter().zip(&other.blocks).fold(T::zero(), |acc, (a, b)| acc.max(a.max_abs_diff(b)))
    }

    /// Zeroes every block above `last`.
    pub fn truncated(&self, last: usize) -> Self {
        Self::from_fn(self.basis, |n| if n <= last { self.blocks[n].clone() } else { CMatrix::zeros(n + 1, n + 1) })
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.basis.dim());
        let mut out = Vec::with_capacity(v.len());
        for (n, b) in self.blocks.iter().enumerate() {
            let start = n * (n + 1) / 2;
            out.extend(b.matvec(&v[start..start + n + 1]));
        }
        out
    }

    pub fn to_general(&self) -> GeneralOperator<T> {
        let mut m = CMatrix::zeros(self.basis.dim(), self.basis.dim());
        for (n, b) in self.blocks.iter().enumerate() {
            let start = n * (n + 1) / 2;
            for i in 0..=n {
                for j in 0..=n {
                    m[(start + i, start + j)] = b[(i, j)];
                }
            }
        }
        GeneralOperator { basis: self.basis, matrix: m }
    }
}

/// Dense operator on the whole truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralOperator<T> {
    basis: FockBasis,
    matrix: CMatrix<T>,
}

impl<T: Real> GeneralOperator<T> {
    pub fn new(basis: FockBasis, matrix: CMatrix<T>) -> Result<Self> {
        if matrix.rows() != basis.dim() || matrix.cols() != basis.dim() {
            return Err(Error::InvalidParameter(format!(
                "matrix is {}x{}, basis needs {}",
                matrix.rows(),
                matrix.cols(),
                basis.dim()
            )));
        }
        Ok(Self { basis, matrix })
    }

    /// `|n₁,n₂⟩⟨m₁,m₂|`.
    pub fn ket_bra(basis: FockBasis, ket: (usize, usize), bra: (usize, usize)) -> Self {
        let mut matrix = CMatrix::zeros(basis.dim(), basis.dim());
        matrix[(basis.index(ket.0, ket.1), basis.index(bra.0, bra.1))] = Complex::one();
        Self { basis, matrix }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    /// `⟨bra_ket|A|ket⟩` by occupation numbers.
    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex<T> {
        self.matrix[(self.basis.index(bra.0, bra.1), self.basis.index(ket.0, ket.1))]
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.basis.check_same(&other.basis)?;
        Ok(Self { basis: self.basis, matrix: self.matrix.matmul(&other.matrix) })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.basis.check_same(&other.basis)?;
        Ok(Self { basis: self.basis, matrix: self.matrix.commutator(&other.matrix) })
    }

    pub fn adjoint(&self) -> Self {
        Self { basis: self.basis, matrix: self.matrix.adjoint() }
    }

    pub fn apply(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        self.matrix.matvec(v)
    }

    /// Keeps only elements between kets of equal total number.
    pub fn gamma_project(&self) -> BlockOperator<T> {
        BlockOperator::from_fn(self.basis, |n| {
            let start = n * (n + 1) / 2;
            CMatrix::from_fn(n + 1, n + 1, |i, j| self.matrix[(start + i, start + j)])
        })
    }
}

pub fn gamma_project<T: Real>(a: &GeneralOperator<T>) -> BlockOperator<T> {
    a.gamma_project()
}

/// `a₁, a₁†, a₂, a₂†` as full matrices.
#[derive(Debug, Clone)]
pub struct LadderOperators<T> {
    pub a1: GeneralOperator<T>,
    pub a1_dag: GeneralOperator<T>,
    pub a2: GeneralOperator<T>,
    pub a2_dag: GeneralOperator<T>,
}

/// Creation past the cutoff is dropped, so `[a, a†] = 1` only below the top block.
pub fn build_ladder_operators<T: Real>(basis: FockBasis) -> LadderOperators<T> {
    let dim = basis.dim();
    let mut a1 = CMatrix::zeros(dim, dim);
    let mut a2 = CMatrix::zeros(dim, dim);
    for (n1, n2) in basis.kets() {
        let col = basis.index(n1, n2);
        if n1 > 0 {
            a1[(basis.index(n1 - 1, n2), col)] = Complex::from(T::from_usize_lossy(n1).sqrt());
        }
        if n2 > 0 {
            a2[(basis.index(n1, n2 - 1), col)] = Complex::from(T::from_usize_lossy(n2).sqrt());
        }
    }
    let a1 = GeneralOperator { basis, matrix: a1 };
    let a2 = GeneralOperator { basis, matrix: a2 };
    LadderOperators { a1_dag: a1.adjoint(), a2_dag: a2.adjoint(), a1, a2 }
}

/// Block pieces `A_{α,n}: F_n → F_{n-1}` of `a₁` and `a₂`.
fn lowering_blocks<T: Real>(n: usize) -> [CMatrix<T>; 2] {
    let mut a1 = CMatrix::zeros(n, n + 1);
    let mut a2 = CMatrix::zeros(n, n + 1);
    for n1 in 0..=n {
        let n2 = n - n1;
        if n1 > 0 {
            a1[(n1 - 1, n1)] = Complex::from(T::from_usize_lossy(n1).sqrt());
        }
        if n2 > 0 {
            a2[(n1, n1)] = Complex::from(T::from_usize_lossy(n2).sqrt());
        }
    }
    [a1, a2]
}

/// `x̂ᵢ = λ a†σⁱa`; each preserves the total number.
pub fn build_coordinates<T: Real>(basis: FockBasis, lambda: T) -> Result<[BlockOperator<T>; 3]> {
    check_lambda(lambda)?;
    let mut x1 = BlockOperator::zeros(basis);
    let mut x2 = BlockOperator::zeros(basis);
    let mut x3 = BlockOperator::zeros(basis);
    for n in 0..=basis.cutoff() {
        for n1 in 0..=n {
            let n2 = n - n1;
            x3.block_mut(n)[(n1, n1)] = Complex::from(lambda * (T::from_usize_lossy(n1) - T::from_usize_lossy(n2)));
            if n2 > 0 {
                // a₁†a₂ |n₁,n₂⟩ = √((n₁+1)n₂) |n₁+1,n₂-1⟩
                let v = lambda * T::from_usize_lossy((n1 + 1) * n2).sqrt();
                x1.block_mut(n)[(n1 + 1, n1)] = Complex::from(v);
                x1.block_mut(n)[(n1, n1 + 1)] = Complex::from(v);
                x2.block_mut(n)[(n1 + 1, n1)] = Complex::new(T::zero(), -v);
                x2.block_mut(n)[(n1, n1 + 1)] = Complex::new(T::zero(), v);
            }
        }
    }
    Ok([x1, x2, x3])
}

/// `r̂ = λ(n̂+1)`.
pub fn radius_operator<T: Real>(basis: FockBasis, lambda: T) -> Result<BlockOperator<T>> {
    check_lambda(lambda)?;
    Ok(BlockOperator::function_of_number(basis, |n| Complex::from(lambda * T::from_usize_lossy(n + 1))))
}

/// `exp(i k·x̂)`, exponentiated block by block.
pub fn plane_wave_operator<T: Real>(kv: &WaveVector<T>, basis: FockBasis) -> Result<BlockOperator<T>> {
    let x = build_coordinates(basis, kv.lambda())?;
    let kvec = kv.vector();
    Ok(BlockOperator::from_fn(basis, |n| {
        let gen = &(&x[0].block(n).scale_real(kvec[0]) + &x[1].block(n).scale_real(kvec[1]))
            + &x[2].block(n).scale_real(kvec[2]);
        gen.scale(Complex::i()).expm()
    }))
}

/// `Σ_α [a_α†, [a_α, ψ]]`.
///
/// Block `n` of `aψa†` reads block `n+1` of `ψ`. With `beyond_is_zero` the
/// missing block `N_max+1` is taken as zero; otherwise the top block of the
/// result is left zero because it cannot be formed.
fn double_commutator<T: Real>(psi: &BlockOperator<T>, beyond_is_zero: bool) -> BlockOperator<T> {
    let basis = psi.basis();
    let nmax = basis.cutoff();
    let lowers: Vec<[CMatrix<T>; 2]> = (0..=nmax).map(lowering_blocks).collect();
    BlockOperator::from_fn(basis, |n| {
        if n == nmax && !beyond_is_zero {
            return CMatrix::zeros(n + 1, n + 1);
        }
        let mut acc = psi.block(n).scale_real(T::from_usize_lossy(2 * n + 2));
        #[allow(clippy::needless_range_loop)]
        for alpha in 0..2 {
            if n >= 1 {
                let a = &lowers[n][alpha];
                acc = &acc - &a.adjoint().matmul(psi.block(n - 1)).matmul(a);
            }
            if n < nmax {
                let a = &lowers[n + 1][alpha];
                acc = &acc - &a.matmul(psi.block(n + 1)).matmul(&a.adjoint());
            }
        }
        acc
    })
}

/// `Δψ = -(1/(λ r̂)) Σ_α [a_α†, [a_α, ψ]]` on blocks `0..N_max-1`.
///
/// Use this for states that genuinely extend past the cutoff, such as plane
/// waves or radial states; the top block of the result is zero.
pub fn laplacian_interior<T: Real>(psi: &BlockOperator<T>, lambda: T) -> Result<BlockOperator<T>> {
    check_lambda(lambda)?;
    Ok(scale_by_inverse_radius(double_commutator(psi, false), lambda))
}

fn scale_by_inverse_radius<T: Real>(dc: BlockOperator<T>, lambda: T) -> BlockOperator<T> {
    BlockOperator::from_fn(dc.basis(), |n| {
        dc.block(n).scale_real(-T::one() / (lambda * lambda * T::from_usize_lossy(n + 1)))
    })
}

/// Laplacian of a state supported below the cutoff block.
///
/// `ψ` is taken to vanish beyond its support, so the result (which reaches
/// one block higher) is exact on every block. Errors with
/// [`Error::TruncationBuffer`] if the top block of `ψ` is non-zero.
pub fn laplacian_apply<T: Real>(psi: &BlockOperator<T>, lambda: T) -> Result<BlockOperator<T>> {
    check_lambda(lambda)?;
    let top = psi.basis().cutoff();
    if psi.block(top).max_abs() > T::zero() {
        return Err(Error::TruncationBuffer(top));
    }
    Ok(scale_by_inverse_radius(double_commutator(psi, true), lambda))
}

/// `Ĥψ = -(ħ²/2m) Δψ`, interior blocks only.
pub fn hamiltonian_interior<T: Real>(psi: &BlockOperator<T>, lambda: T, hbar: T, mass: T) -> Result<BlockOperator<T>> {
    if !(mass > T::zero()) || !(hbar > T::zero()) {
        return Err(Error::InvalidParameter("hbar and mass must be positive".into()));
    }
    let lap = laplacian_interior(psi, lambda)?;
    Ok(lap.scale(Complex::from(-hbar * hbar / (T::lit(2.0) * mass))))
}

/// `L̂ᵢψ = (ħ/2λ)[x̂ᵢ, ψ]` for axis index `i ∈ {0, 1, 2}`.
pub fn angular_momentum_apply<T: Real>(axis: usize, psi: &BlockOperator<T>, lambda: T, hbar: T) -> Result<BlockOperator<T>> {
    if axis > 2 {
        return Err(Error::InvalidParameter(format!("axis index {axis} not in 0..3")));
    }
    let x = build_coordinates(psi.basis(), lambda)?;
    let c = x[axis].commutator(psi)?;
    Ok(c.scale(Complex::from(hbar / (T::lit(2.0) * lambda))))
}

/// `4πλ³ Σ_n (n+1) tr(ψ_n† φ_n)`.
pub fn weighted_inner_product<T: Real>(psi: &BlockOperator<T>, phi: &BlockOperator<T>, lambda: T) -> Result<Complex<T>> {
    psi.basis().check_same(&phi.basis())?;
    check_lambda(lambda)?;
    let mut acc = Complex::zero();
    for n in 0..psi.basis().num_blocks() {
        let (a, b) = (psi.block(n), phi.block(n));
        let mut tr = Complex::zero();
        for (x, y) in a.as_slice().iter().zip(b.as_slice()) {
            tr += x.conj() * *y;
        }
        acc += tr * T::from_usize_lossy(n + 1);
    }
    Ok(acc * (T::lit(4.0) * T::PI() * lambda * lambda * lambda))
}

/// `ln k!` for `k = 0..=n`.
fn ln_factorials<T: Real>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = T::zero();
    out.push(acc);
    for k in 1..=n {
        acc += T::from_usize_lossy(k).ln();
        out.push(acc);
    }
    out
}

/// The index set of `|k,l,m⟩`: `(m₁,m₂,n₁,n₂)` with `m₁+m₂ = n₁+n₂ = l`
/// and `m₁-m₂-n₁+n₂ = 2m`.
pub fn klm_index_set(l: usize, m: i64) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for m1 in 0..=l {
        for n1 in 0..=l {
            let (m2, n2) = (l - m1, l - n1);
            if m1 as i64 - m2 as i64 - n1 as i64 + n2 as i64 == 2 * m {
                out.push((m1, m2, n1, n2));
            }
        }
    }
    out
}

/// `|k,l,m⟩ = Σ_Λ (a₁†)^{m₁}(a₂†)^{m₂}/(m₁!m₂!) g(n̂) a₁^{n₁}(-a₂)^{n₂}/(n₁!n₂!)`.
///
/// `g` acts on the intermediate block `n-l` and comes from
/// [`radialwaves`](crate::radialwaves); for kinds `Y` and `H` it is set to
/// zero at the origin. Factorials are handled in log-space.
pub fn build_klm_state<T: Real>(
    k: T,
    l: usize,
    m: i64,
    kind: RadialKind,
    basis: FockBasis,
    lambda: T,
) -> Result<BlockOperator<T>> {
    check_lambda(lambda)?;
    if m.unsigned_abs() as usize > l {
        return Err(Error::QuantumNumbers { l: l as i64, m });
    }
    let kappa = lambda * k;
    check_kappa(kappa)?;
    let spec = RadialFunctionSpec::new(l, kappa, kind)?;
    let nmax = basis.cutoff();
    let g: Vec<Complex<T>> = (0..=nmax.saturating_sub(l)).map(|j| spec.eval(j)).collect();
    let lf = ln_factorials::<T>(nmax + l + 1);
    let lambda_set = klm_index_set(l, m);
    Ok(BlockOperator::from_fn(basis, |n| {
        let mut b = CMatrix::zeros(n + 1, n + 1);
        if n < l {
            return b;
        }
        let gj = g[n - l];
        for &(m1, m2, n1, n2) in &lambda_set {
            let sign = if n2 % 2 == 1 { -T::one() } else { T::one() };
            let ln_norm = -(lf[m1] + lf[m2] + lf[n1] + lf[n2]);
            // Column q₁ lowers to (q₁-n₁, q₂-n₂) then raises to (q₁-n₁+m₁, ·).
            for q1 in n1..=n {
                let q2 = n - q1;
                if q2 < n2 {
                    continue;
                }
                let (j1, j2) = (q1 - n1, q2 - n2);
                let p1 = j1 + m1;
                let half = T::lit(0.5);
                let ln_lower = half * (lf[q1] - lf[j1] + lf[q2] - lf[j2]);
                let ln_raise = half * (lf[j1 + m1] - lf[j1] + lf[j2 + m2] - lf[j2]);
                let mag = (ln_norm + ln_lower + ln_raise).exp() * sign;
                b[(p1, q1)] += gj * mag;
            }
        }
        b
    }))
}

/// Poisson tail `Σ_{n>N} e^{-R}Rⁿ/n!`, summed directly.
pub fn poisson_tail<T: Real>(r: T, cutoff: usize) -> T {
    if r == T::zero() {
        return T::zero();
    }
    let mut ln_term = -r;
    for k in 1..=cutoff + 1 {
        ln_term += r.ln() - T::from_usize_lossy(k).ln();
    }
    let mut term = ln_term.exp();
    let mut sum = T::zero();
    let mut k = cutoff + 1;
    while term > sum * T::epsilon() || T::from_usize_lossy(k) < r {
        sum += term;
        k += 1;
        term *= r / T::from_usize_lossy(k);
        if k > cutoff + 100_000 {
            break;
        }
    }
    sum
}

/// Tail mass allowed when truncating a coherent state.
pub const COHERENT_TAIL_TOL: f64 = 1e-12;

/// Amplitudes `e^{-R/2} z₁^{n₁} z₂^{n₂} / √(n₁!n₂!)` in global ket order.
pub fn coherent_vector<T: Real>(z: &CoherentPoint<T>, basis: FockBasis) -> Result<Vec<Complex<T>>> {
    let r = z.big_r();
    let tail = poisson_tail(r, basis.cutoff());
    if tail > T::lit(COHERENT_TAIL_TOL) {
        return Err(Error::InsufficientCutoff { cutoff: basis.cutoff(), r: r.to_f64_lossy(), tail: tail.to_f64_lossy() });
    }
    let lf = ln_factorials::<T>(basis.cutoff());
    let half = T::lit(0.5);
    let (m1, m2) = (z.z1.norm(), z.z2.norm());
    let (p1, p2) = (z.z1.arg(), z.z2.arg());
    Ok(basis
        .kets()
        .map(|(n1, n2)| {
            if (n1 > 0 && m1 == T::zero()) || (n2 > 0 && m2 == T::zero()) {
                return Complex::zero();
            }
            let lnm = |m: T, n: usize| if n == 0 { T::zero() } else { T::from_usize_lossy(n) * m.ln() };
            let ln_mag = -r * half + lnm(m1, n1) + lnm(m2, n2) - half * (lf[n1] + lf[n2]);
            let phase = T::from_usize_lossy(n1) * p1 + T::from_usize_lossy(n2) * p2;
            Complex::from_polar(ln_mag.exp(), phase)
        })
        .collect())
}

/// `⟨u|v⟩`
pub fn inner<T: Real>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter().zip(v).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
}

fn check_lambda<T: Real>(lambda: T) -> Result<()> {
    if lambda > T::zero() && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn random_block_op(basis: FockBasis, last: usize, rng: &mut ChaCha8Rng) -> BlockOperator<f64> {
        BlockOperator::from_fn(basis, |n| {
            if n > last {
                return CMatrix::zeros(n + 1, n + 1);
            }
            CMatrix::from_fn(n + 1, n + 1, |_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        })
    }

    #[test]
    fn basis_enumeration() {
        let b = FockBasis::new(4).unwrap();
        assert_eq!(b.dim(), 15);
        assert_eq!(b.kets().count(), 15);
        for (i, ket) in b.kets().enumerate() {
            assert_eq!(b.index(ket.0, ket.1), i);
            assert_eq!(b.ket(i), ket);
        }
        assert!(FockBasis::new(0).is_err());
    }

    #[test]
    fn ladder_normalization() {
        let b = FockBasis::new(5).unwrap();
        let ops = build_ladder_operators::<f64>(b);
        assert_eq!(ops.a1_dag.element((1, 0), (0, 0)), C::new(1.0, 0.0));
        assert!((ops.a1_dag.element((2, 0), (1, 0)).re - 2f64.sqrt()).abs() < 1e-15);
        let comm = ops.a1.commutator(&ops.a1_dag).unwrap();
        for (n1, n2) in b.kets().filter(|(a, c)| a + c < 5) {
            for ket in b.kets() {
                let want = if ket == (n1, n2) { 1.0 } else { 0.0 };
                let got = comm.element(ket, (n1, n2));
                assert!((got - C::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn coordinate_algebra_is_exact() {
        let lambda = 0.3;
        let b = FockBasis::new(8).unwrap();
        let [x1, x2, x3] = build_coordinates(b, lambda).unwrap();
        for n in 0..=8 {
            for n1 in 0..=n {
                let want = lambda * (2.0 * n1 as f64 - n as f64);
                assert_eq!(x3.block(n)[(n1, n1)], C::new(want, 0.0));
            }
        }
        let c12 = x1.commutator(&x2).unwrap();
        let want = x3.scale(C::new(0.0, 2.0 * lambda));
        assert!(c12.max_abs_diff(&want) < 1e-13);
        let c23 = x2.commutator(&x3).unwrap();
        assert!(c23.max_abs_diff(&x1.scale(C::new(0.0, 2.0 * lambda))) < 1e-13);
        let sq = x1.matmul(&x1).unwrap().add(&x2.matmul(&x2).unwrap()).unwrap().add(&x3.matmul(&x3).unwrap()).unwrap();
        let want = BlockOperator::function_of_number(b, |n| C::from(lambda * lambda * (n * (n + 2)) as f64));
        assert!(sq.max_abs_diff(&want) < 1e-12);
        // r̂² − x̂ᵢx̂ᵢ = λ²
        let r = radius_operator(b, lambda).unwrap();
        let diff = r.matmul(&r).unwrap().sub(&sq).unwrap();
        assert!(diff.max_abs_diff(&BlockOperator::identity(b).scale(C::from(lambda * lambda))) < 1e-12);
        assert_eq!(r.block(0)[(0, 0)].re, lambda);
        assert!((r.block(5)[(2, 2)].re - 6.0 * lambda).abs() < 1e-15);
    }

    #[test]
    fn plane_wave_along_z_is_diagonal_phase() {
        let lambda = 0.5;
        let b = FockBasis::new(10).unwrap();
        let kv = WaveVector::new(1.3, [0.0, 0.0, 1.0], lambda).unwrap();
        let pw = plane_wave_operator(&kv, b).unwrap();
        for n in 0..=10 {
            for n1 in 0..=n {
                let want = C::from_polar(1.0, 1.3 * lambda * (2.0 * n1 as f64 - n as f64));
                assert!((pw.block(n)[(n1, n1)] - want).norm() < 1e-12);
            }
            assert!(pw.block(n).adjoint().matmul(pw.block(n)).max_abs_diff(&CMatrix::identity(n + 1)) < 1e-11);
        }
        let zero = WaveVector::new(0.0, [1.0, 0.0, 0.0], lambda).unwrap();
        assert!(plane_wave_operator(&zero, b).unwrap().max_abs_diff(&BlockOperator::identity(b)) < 1e-15);
    }

    #[test]
    fn laplacian_of_identity_vanishes_and_buffer_is_enforced() {
        let b = FockBasis::new(6).unwrap();
        let id = BlockOperator::<f64>::identity_through(b, 5);
        let lap = laplacian_apply(&id, 0.2).unwrap();
        // The truncated identity has an edge at block 5, felt by blocks 5 and 6.
        assert!(lap.truncated(4).frobenius_norm() < 1e-12);
        assert!(lap.block(5).max_abs() > 1.0);
        assert_eq!(laplacian_apply(&BlockOperator::<f64>::identity(b), 0.2), Err(Error::TruncationBuffer(6)));
    }

    #[test]
    fn plane_wave_energy_on_interior_blocks() {
        let lambda = 0.25;
        let b = FockBasis::new(20).unwrap();
        for &kappa in &[0.3f64, 1.0, 2.5] {
            let kv = WaveVector::new(kappa / lambda, [0.0, 0.0, 1.0], lambda).unwrap();
            let pw = plane_wave_operator(&kv, b).unwrap();
            let h = hamiltonian_interior(&pw, lambda, 1.0, 1.0).unwrap();
            let e = 2.0 / (lambda * lambda) * (kappa / 2.0).sin().powi(2);
            let resid = h.sub(&pw.scale(C::from(e))).unwrap().frobenius_norm_through(19);
            assert!(resid / (e * pw.frobenius_norm_through(19)) < 1e-10);
        }
    }

    #[test]
    fn angular_momentum_algebra() {
        let lambda = 0.4;
        let b = FockBasis::new(6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let psi = random_block_op(b, 6, &mut rng);
        let l = |i, p: &BlockOperator<f64>| angular_momentum_apply(i, p, lambda, 1.0).unwrap();
        let lhs = l(0, &l(1, &psi)).sub(&l(1, &l(0, &psi))).unwrap();
        let rhs = l(2, &psi).scale(C::i());
        assert!(lhs.max_abs_diff(&rhs) < 1e-10);
        assert!(l(0, &BlockOperator::identity(b)).frobenius_norm() < 1e-15);
        assert!(angular_momentum_apply(3, &psi, lambda, 1.0).is_err());
    }

    #[test]
    fn klm_index_sets() {
        assert_eq!(klm_index_set(0, 0), vec![(0, 0, 0, 0)]);
        let mut s = klm_index_set(1, 0);
        s.sort();
        assert_eq!(s, vec![(0, 1, 0, 1), (1, 0, 1, 0)]);
        assert!(build_klm_state(1.0, 1, 2, RadialKind::J, FockBasis::new(4).unwrap(), 0.3).is_err());
    }

    #[test]
    fn klm_l0_is_diagonal_radial_function() {
        let b = FockBasis::new(12).unwrap();
        let (lambda, k) = (0.5, 1.2);
        let psi = build_klm_state(k, 0, 0, RadialKind::J, b, lambda).unwrap();
        for n in 0..=12 {
            let g = crate::radialwaves::g_bessel(0, n, lambda * k).unwrap();
            assert!(psi.block(n).max_abs_diff(&CMatrix::from_diagonal(&vec![C::from(g); n + 1])) < 1e-15);
        }
    }

    #[test]
    fn klm_states_carry_lz_quantum_number() {
        let b = FockBasis::new(14).unwrap();
        let lambda = 0.5;
        for l in 0..3usize {
            for m in -(l as i64)..=(l as i64) {
                let psi = build_klm_state(0.9, l, m, RadialKind::J, b, lambda).unwrap();
                let lz = angular_momentum_apply(2, &psi, lambda, 1.0).unwrap();
                assert!(lz.max_abs_diff(&psi.scale(C::from(m as f64))) < 1e-10, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn klm_states_are_energy_eigenstates() {
        let b = FockBasis::new(30).unwrap();
        let lambda: f64 = 1.0;
        for l in 0..3usize {
            for kind in [RadialKind::J, RadialKind::Y] {
                let kappa: f64 = 0.7;
                let psi = build_klm_state(kappa / lambda, l, 0, kind, b, lambda).unwrap();
                let h = hamiltonian_interior(&psi, lambda, 1.0, 1.0).unwrap();
                let e = 2.0 * (kappa / 2.0).sin().powi(2);
                // Y is irregular at the origin; blocks n ≤ l+1 read g(0).
                let skip = if kind == RadialKind::Y { l + 2 } else { 0 };
                let mut num = 0.0;
                let mut den = 0.0;
                for n in skip..30 {
                    let d = h.block(n) - &psi.block(n).scale(C::from(e));
                    num += d.frobenius_norm().powi(2);
                    den += psi.block(n).frobenius_norm().powi(2);
                }
                assert!((num / den).sqrt() < 1e-10, "l={l} {kind:?} resid {}", (num / den).sqrt());
            }
        }
    }

    #[test]
    fn coherent_vector_properties() {
        let b = FockBasis::new(40).unwrap();
        let vac = coherent_vector(&CoherentPoint::from_polar(0.0f64, 0.0, 0.0, 0.0, 0.1).unwrap(), b).unwrap();
        assert_eq!(vac[0], C::new(1.0, 0.0));
        assert!(vac[1..].iter().all(|z| z.norm() == 0.0));
        let z = CoherentPoint::from_polar(0.5f64, 1.0, 2.0, 0.3, 0.1).unwrap();
        let v = coherent_vector(&z, b).unwrap();
        assert!((inner(&v, &v).re - 1.0).abs() < 1e-10);
        let number = BlockOperator::function_of_number(b, |n| C::from(n as f64));
        assert!((inner(&v, &number.apply(&v)).re - 5.0).abs() < 1e-9);
        let far = CoherentPoint::from_polar(3.0, 1.0, 2.0, 0.3, 0.1).unwrap();
        assert!(matches!(coherent_vector(&far, b), Err(Error::InsufficientCutoff { .. })));
    }

    #[test]
    fn weighted_inner_product_properties() {
        let b = FockBasis::new(5).unwrap();
        let lambda = 0.2;
        let id = BlockOperator::<f64>::identity(b);
        let got = weighted_inner_product(&id, &id, lambda).unwrap();
        let want = 4.0 * std::f64::consts::PI * lambda.powi(3) * (1..=6).map(|k| (k * k) as f64).sum::<f64>();
        assert!((got.re - want).abs() < 1e-12 && got.im == 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (p, q) = (random_block_op(b, 5, &mut rng), random_block_op(b, 5, &mut rng));
        let pp = weighted_inner_product(&p, &p, lambda).unwrap();
        assert!(pp.re > 0.0 && pp.im.abs() < 1e-14);
        let (pq, qp) = (weighted_inner_product(&p, &q, lambda).unwrap(), weighted_inner_product(&q, &p, lambda).unwrap());
        assert!((pq - qp.conj()).norm() < 1e-12);
        let other = BlockOperator::<f64>::identity(FockBasis::new(4).unwrap());
        assert_eq!(weighted_inner_product(&id, &other, lambda), Err(Error::BasisMismatch(5, 4)));
    }

    #[test]
    fn gamma_projection() {
        let b = FockBasis::new(4).unwrap();
        let kb = GeneralOperator::<f64>::ket_bra(b, (2, 0), (1, 0));
        assert!(kb.gamma_project().frobenius_norm() == 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let blk = random_block_op(b, 4, &mut rng);
        assert_eq!(blk.to_general().gamma_project(), blk);
        let m = CMatrix::from_fn(b.dim(), b.dim(), |_, _| C::new(rng.gen_range(-1.0..1.0), 0.0));
        let g = GeneralOperator::new(b, m).unwrap();
        let once = g.gamma_project();
        assert_eq!(once.to_general().gamma_project(), once);
    }
}
