//! Python bindings: finite groups, Galois contexts, norm maps and the
//! membership calculators, exposed as `brnralkit`.
//!
//! Errors from the core library surface as `ValueError` with the violated
//! invariant in the message.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use brnral_core::abmod::GaloisContext as CoreContext;
use brnral_core::brnral::{
    brnral_char_zero, brnral_finite_field, dual_map_from_pairing, kernel_comparison,
    real_orthogonality, BrnralInstance, BrnralResult,
};
use brnral_core::cohom::{h1_abelian, h1_nonabelian};
use brnral_core::groups::{abelianization, FiniteGroup as CoreGroup, GroupAction};
use brnral_core::linalg::IntMat;
use brnral_core::norms::NormContext as CoreNormContext;
use brnral_core::torf::{
    build_finite_subgroup, semidirect, torsion_module_q, TorfExtensionData, TorusLattice,
};

fn to_py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn bigvec_to_i64(v: &[num_bigint::BigInt]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    v.iter()
        .map(|x| x.to_i64().expect("coordinate fits i64"))
        .collect()
}

/// A finite group given by its multiplication table.
#[pyclass(name = "FiniteGroup", skip_from_py_object)]
#[derive(Clone)]
struct PyFiniteGroup {
    inner: CoreGroup,
}

#[pymethods]
impl PyFiniteGroup {
    /// Build from a full multiplication table (validates the group axioms).
    #[new]
    fn new(table: Vec<Vec<usize>>, identity: usize) -> PyResult<Self> {
        Ok(PyFiniteGroup {
            inner: CoreGroup::new(table, identity).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn trivial() -> Self {
        PyFiniteGroup {
            inner: CoreGroup::trivial(),
        }
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        PyFiniteGroup {
            inner: CoreGroup::cyclic(n),
        }
    }

    #[staticmethod]
    fn dihedral(n: usize) -> Self {
        PyFiniteGroup {
            inner: CoreGroup::dihedral(n),
        }
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        PyFiniteGroup {
            inner: CoreGroup::symmetric(n),
        }
    }

    #[staticmethod]
    fn quaternion8() -> Self {
        PyFiniteGroup {
            inner: CoreGroup::quaternion8(),
        }
    }

    #[staticmethod]
    fn direct_product(a: &PyFiniteGroup, b: &PyFiniteGroup) -> Self {
        PyFiniteGroup {
            inner: CoreGroup::direct_product(&a.inner, &b.inner),
        }
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn identity(&self) -> usize {
        self.inner.identity()
    }

    fn op(&self, a: usize, b: usize) -> usize {
        self.inner.op(a, b)
    }

    fn inverse(&self, a: usize) -> usize {
        self.inner.inv(a)
    }

    fn element_order(&self, a: usize) -> u64 {
        self.inner.element_order(a)
    }

    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn conjugacy_test(&self, x: usize, y: usize) -> bool {
        self.inner.conjugacy_test(x, y)
    }

    fn derived_subgroup(&self) -> Vec<usize> {
        self.inner.derived_subgroup()
    }

    fn generated_subgroup(&self, gens: Vec<usize>) -> Vec<usize> {
        self.inner.generated_subgroup(&gens)
    }

    /// Invariant factors of G/D(G) and the projection image of each element.
    fn abelianization<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let ab = abelianization(&self.inner);
        let d = PyDict::new(py);
        d.set_item("torsion", ab.module.torsion.clone())?;
        let proj: Vec<Vec<i64>> = (0..self.inner.order())
            .map(|x| bigvec_to_i64(ab.proj.apply(x)))
            .collect();
        d.set_item("projection", proj)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("FiniteGroup(order={})", self.inner.order())
    }
}

/// A finite Galois quotient with cyclotomic character.
#[pyclass(name = "GaloisContext", skip_from_py_object)]
#[derive(Clone)]
struct PyGaloisContext {
    inner: CoreContext,
}

#[pymethods]
impl PyGaloisContext {
    #[new]
    #[pyo3(signature = (gamma, h, qchar, frobenius=None))]
    fn new(
        gamma: &PyFiniteGroup,
        h: u64,
        qchar: Vec<u64>,
        frobenius: Option<usize>,
    ) -> PyResult<Self> {
        Ok(PyGaloisContext {
            inner: CoreContext::new(gamma.inner.clone(), frobenius, h, qchar).map_err(to_py_err)?,
        })
    }

    fn order(&self) -> usize {
        self.inner.gamma.order()
    }

    fn h(&self) -> u64 {
        self.inner.h
    }

    fn qchar(&self, sigma: usize) -> u64 {
        self.inner.q(sigma)
    }

    fn __repr__(&self) -> String {
        format!(
            "GaloisContext(order={}, h={}, finite_field={})",
            self.inner.gamma.order(),
            self.inner.h,
            self.inner.is_finite_field_mode()
        )
    }
}

/// A finite group with Galois action, its abelianization, and the norm maps.
#[pyclass(name = "NormContext")]
struct PyNormContext {
    inner: CoreNormContext,
}

#[pymethods]
impl PyNormContext {
    /// `action` is one permutation of the group per Galois element.
    #[new]
    fn new(
        ctx: &PyGaloisContext,
        group: &PyFiniteGroup,
        action: Vec<Vec<usize>>,
    ) -> PyResult<Self> {
        let inner = CoreNormContext::new(
            ctx.inner.clone(),
            group.inner.clone(),
            GroupAction { maps: action },
        )
        .map_err(to_py_err)?;
        Ok(PyNormContext { inner })
    }

    /// The twisted power map: sigma^{-1}(b^{q(sigma)}).
    fn phi(&self, sigma: usize, b: usize) -> PyResult<usize> {
        self.inner.phi(sigma, b).map_err(to_py_err)
    }

    /// Minimal n >= 1 with phi^n(b) conjugate to b.
    fn n_period(&self, sigma: usize, b: usize) -> PyResult<u64> {
        self.inner.n_period(sigma, b).map_err(to_py_err)
    }

    /// The sigma-norm in H^ab coordinates.
    fn norm(&self, sigma: usize, b: usize) -> PyResult<Vec<i64>> {
        Ok(bigvec_to_i64(
            &self.inner.norm(sigma, b).map_err(to_py_err)?,
        ))
    }

    fn hab_torsion(&self) -> Vec<u64> {
        self.inner.hab.torsion.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "NormContext(|H|={}, |Gamma|={}, h={})",
            self.inner.h_group.order(),
            self.inner.ctx.gamma.order(),
            self.inner.ctx.h
        )
    }
}

fn result_to_dict<'py>(
    py: Python<'py>,
    res: &BrnralResult,
    h: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("ambient", res.ambient.factors.clone())?;
    d.set_item("member_factors", res.members.factors.clone())?;
    d.set_item("member_order", res.members.order())?;
    d.set_item("member_generators", res.members.gen_coords.clone())?;
    let wit = PyList::empty(py);
    for w in &res.witnesses {
        let e = PyDict::new(py);
        e.set_item("generator", w.ambient_gen)?;
        e.set_item("sigma", w.sigma)?;
        e.set_item("b", w.b)?;
        e.set_item("value", brnral_core::io::qz_to_string(w.value, h))?;
        wit.append(e)?;
    }
    d.set_item("witnesses", wit)?;
    if let Some(v) = &res.vanishing {
        let c = PyDict::new(py);
        c.set_item("gamma_prime", v.gamma_prime.clone())?;
        c.set_item("image_values_vanish", v.image_values_vanish)?;
        c.set_item("image_classes_trivial", v.image_classes_trivial)?;
        d.set_item("vanishing", c)?;
    }
    Ok(d)
}

/// A membership problem instance over the canonical dual pairing.
#[pyclass(name = "Instance")]
struct PyInstance {
    inner: BrnralInstance,
}

#[pymethods]
impl PyInstance {
    /// M = dual of H^ab with the canonical twisted action and evaluation.
    #[staticmethod]
    fn canonical_dual(nc: &PyNormContext) -> PyResult<Self> {
        Ok(PyInstance {
            inner: BrnralInstance::canonical_dual(nc.inner.clone()).map_err(to_py_err)?,
        })
    }

    /// Finite-field criterion (requires a Frobenius in the context).
    fn finite_field<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let res = brnral_finite_field(&self.inner).map_err(to_py_err)?;
        result_to_dict(py, &res, self.inner.nc.ctx.h)
    }

    /// Characteristic-zero criterion (condition at every sigma).
    fn char_zero<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let res = brnral_char_zero(&self.inner).map_err(to_py_err)?;
        result_to_dict(py, &res, self.inner.nc.ctx.h)
    }

    /// Invariant factors of the ambient H^1(Gamma, M).
    fn h1_ambient(&self) -> Vec<u64> {
        h1_abelian(&self.inner.nc.ctx.gamma, &self.inner.m).factors
    }

    /// Number of twisted-conjugacy classes of nonabelian 1-cocycles.
    fn h1_nonabelian_classes(&self) -> usize {
        h1_nonabelian(
            &self.inner.nc.ctx.gamma,
            &self.inner.nc.h_group,
            &self.inner.nc.action,
        )
        .reps
        .len()
    }

    /// Invariant factors of ker[H^1(M) -> H^1(dual H^ab)] for the
    /// pairing-induced dual map.
    fn comparison_kernel(&self) -> PyResult<Vec<u64>> {
        let (_, dmap) = dual_map_from_pairing(&self.inner).map_err(to_py_err)?;
        let (_, kernel) = kernel_comparison(&self.inner, &dmap).map_err(to_py_err)?;
        Ok(kernel.factors)
    }

    /// Real-place orthogonality report (Galois of order 2, qchar = -1).
    fn real_orthogonality<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = real_orthogonality(&self.inner).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("all_orthogonal", report.all_orthogonal)?;
        d.set_item("member_factors", report.members.factors.clone())?;
        d.set_item("nonab_classes", report.nonab_class_count)?;
        let pairs = PyList::empty(py);
        for p in &report.pairs {
            let e = PyDict::new(py);
            e.set_item("member", p.member_coords.clone())?;
            e.set_item("class", p.nonab_class)?;
            e.set_item("orthogonal", p.orthogonal)?;
            pairs.append(e)?;
        }
        d.set_item("pairs", pairs)?;
        Ok(d)
    }
}

/// Construct the finite subgroup H of a torus-by-F extension and return its
/// diagram certificate.
///
/// `z` is the extension 2-cocycle on the semidirect product (element (f, s)
/// has index f*|Gamma| + s), given as a flat list of |Q|^2 coordinate
/// vectors in row-major order, valued in (Z/m0)^rank.
#[pyfunction]
#[pyo3(signature = (f, ctx, gamma_on_f, rank, gamma_mats, f_mats, m0, z, n, d, max_level=64))]
#[allow(clippy::too_many_arguments)]
fn build_subgroup<'py>(
    py: Python<'py>,
    f: &PyFiniteGroup,
    ctx: &PyGaloisContext,
    gamma_on_f: Vec<Vec<usize>>,
    rank: usize,
    gamma_mats: Vec<Vec<Vec<i64>>>,
    f_mats: Vec<Vec<Vec<i64>>>,
    m0: u64,
    z: Vec<Vec<i64>>,
    n: u64,
    d: u64,
    max_level: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let lattice = TorusLattice {
        rank,
        gamma_mats: gamma_mats
            .iter()
            .map(|m| IntMat::from_rows_i64(m))
            .collect(),
        f_mats: f_mats.iter().map(|m| IntMat::from_rows_i64(m)).collect(),
    };
    let action = GroupAction { maps: gamma_on_f };
    let sd = semidirect(&f.inner, &ctx.inner.gamma, &action).map_err(to_py_err)?;
    let tm = torsion_module_q(&lattice, m0, &sd);
    let q_order = sd.group.order();
    if z.len() != q_order * q_order {
        return Err(PyValueError::new_err(format!(
            "z must have |Q|^2 = {} entries, got {}",
            q_order * q_order,
            z.len()
        )));
    }
    let values: Vec<Vec<num_bigint::BigInt>> = z
        .iter()
        .map(|v| v.iter().map(|&c| num_bigint::BigInt::from(c)).collect())
        .collect();
    let mut zc = brnral_core::cohom::Cocycle2::from_table(q_order, values);
    zc.validate(&sd.group, &tm).map_err(to_py_err)?;
    if !zc.is_normalized(&sd.group, &tm) {
        zc = zc.normalized(&sd.group, &tm);
    }
    let data = TorfExtensionData {
        f: f.inner.clone(),
        ctx: ctx.inner.clone(),
        gamma_on_f: action,
        lattice,
        m0,
        z: zc,
    };
    let built = build_finite_subgroup(&data, n, d, max_level).map_err(to_py_err)?;
    let c = &built.certificate;
    let out = PyDict::new(py);
    out.set_item("h_order", c.h_order)?;
    out.set_item("torus_part_order", c.torus_part_order)?;
    out.set_item("nd", c.nd)?;
    out.set_item("level_k", c.level_k)?;
    out.set_item("base_level", c.base_level)?;
    out.set_item("certificate_holds", c.holds())?;
    let table: Vec<Vec<usize>> = (0..built.h.order())
        .map(|a| {
            (0..built.h.order())
                .map(|b| built.h.group().op(a, b))
                .collect()
        })
        .collect();
    out.set_item("h_table", table)?;
    out.set_item("gamma_action_on_h", built.gamma_action_on_h.maps.clone())?;
    Ok(out)
}

#[pymodule]
fn brnralkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyFiniteGroup>()?;
    m.add_class::<PyGaloisContext>()?;
    m.add_class::<PyNormContext>()?;
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(build_subgroup, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrappers_construct() {
        let g = PyFiniteGroup::symmetric(3);
        assert_eq!(g.order(), 6);
        let gamma = PyFiniteGroup::cyclic(2);
        let ctx = PyGaloisContext::new(&gamma, 6, vec![1, 5], Some(1)).unwrap();
        let action = vec![(0..6).collect::<Vec<_>>(), (0..6).collect::<Vec<_>>()];
        let nc = PyNormContext::new(&ctx, &g, action).unwrap();
        assert_eq!(nc.hab_torsion(), vec![2]);
        let inst = PyInstance::canonical_dual(&nc).unwrap();
        assert_eq!(inst.h1_ambient(), vec![2]);
        assert_eq!(inst.h1_nonabelian_classes(), 2);
    }
}
