//! Python bindings. Elements cross the boundary by name; algebras by value.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use bisem::balbes::verify_representation;
use bisem::balg::{parse_balg, print_balg};
use bisem::builtin::builtin_by_name;
use bisem::corpus::{enumerate_exhaustive, generate_plonka, CorpusMode, CorpusSpec};
use bisem::duality::{algebra_of_2space, build_2space, check_2space};
use bisem::filters::{filters, ideals, prime_filters, prime_ideals, separation_witness};
use bisem::kleene::{consequence, evaluate, is_tautology, no_tautology_probe, parse_formula, Logic, Tv, Valuation};
use bisem::laws::{check_absorption, in_variety};
use bisem::{classify_variety, enumerate_homomorphisms, find_isomorphism, AlgebraTable, Signature};

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Algebra", module = "pybisem", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: AlgebraTable,
}

impl PyAlgebra {
    fn index(&self, name: &str) -> PyResult<usize> {
        self.inner.index_of(name).ok_or_else(|| value_error(format!("no element named {name:?}")))
    }

    fn names_of(&self, s: bisem::Subset) -> Vec<String> {
        s.iter().map(|i| self.inner.name(i).to_string()).collect()
    }
}

#[pymethods]
impl PyAlgebra {
    #[staticmethod]
    fn from_balg(text: &str) -> PyResult<Self> {
        parse_balg(text).map(|inner| PyAlgebra { inner }).map_err(value_error)
    }

    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        builtin_by_name(name).map(|inner| PyAlgebra { inner }).map_err(value_error)
    }

    fn to_balg(&self) -> String {
        print_balg(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Algebra([{}], {})", self.inner.names().join(", "), self.inner.signature())
    }

    fn __eq__(&self, other: &PyAlgebra) -> bool {
        self.inner == other.inner
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn meet(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.name(self.inner.meet(self.index(a)?, self.index(b)?)).to_string())
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.name(self.inner.join(self.index(a)?, self.index(b)?)).to_string())
    }

    /// Variety names such as "DBS", most general first.
    fn varieties(&self) -> Vec<String> {
        classify_variety(&self.inner).iter().map(|t| t.as_str().to_string()).collect()
    }

    fn in_variety(&self, variety: &str) -> PyResult<bool> {
        Ok(in_variety(&self.inner, variety.parse().map_err(value_error)?))
    }

    /// `None` when absorption holds, otherwise the witness pair by name.
    fn absorption_witness(&self) -> Option<Vec<String>> {
        check_absorption(&self.inner)
            .violation()
            .map(|v| v.witness.iter().map(|&i| self.inner.name(i).to_string()).collect())
    }

    #[pyo3(signature = (prime = false))]
    fn filters(&self, prime: bool) -> Vec<Vec<String>> {
        let fs = if prime { prime_filters(&self.inner) } else { filters(&self.inner) };
        fs.into_iter().map(|f| self.names_of(f.members())).collect()
    }

    #[pyo3(signature = (prime = false))]
    fn ideals(&self, prime: bool) -> Vec<Vec<String>> {
        let is = if prime { prime_ideals(&self.inner) } else { ideals(&self.inner) };
        is.into_iter().map(|i| self.names_of(i.members())).collect()
    }

    /// A prime filter containing `a` and not `b`.
    fn separation_witness(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        let f = separation_witness(&self.inner, self.index(a)?, self.index(b)?).map_err(value_error)?;
        Ok(self.names_of(f.members()))
    }

    /// The representation certificate as text; raises when it fails.
    fn represent(&self) -> PyResult<String> {
        verify_representation(&self.inner).map(|c| c.to_string()).map_err(value_error)
    }

    /// Whether the algebra survives the trip through its 2space.
    fn roundtrip(&self) -> PyResult<bool> {
        let ts = build_2space(&self.inner).map_err(value_error)?;
        check_2space(&ts).map_err(value_error)?;
        let back = algebra_of_2space(&ts).map_err(value_error)?;
        Ok(find_isomorphism(&back, &self.inner.reduct(Signature::LATTICE)).is_some())
    }

    /// Homomorphisms to `other` under the shared signature, each as a map
    /// from element names to element names.
    fn homomorphisms(&self, other: &PyAlgebra) -> PyResult<Vec<BTreeMap<String, String>>> {
        let sig = self.inner.signature().intersection(other.inner.signature());
        let homs = enumerate_homomorphisms(&self.inner, &other.inner, sig).map_err(value_error)?;
        Ok(homs
            .iter()
            .map(|h| {
                (0..self.inner.len())
                    .map(|a| (self.inner.name(a).to_string(), other.inner.name(h.apply(a)).to_string()))
                    .collect()
            })
            .collect())
    }

    fn is_isomorphic(&self, other: &PyAlgebra) -> bool {
        self.inner.signature() == other.inner.signature() && find_isomorphism(&self.inner, &other.inner).is_some()
    }
}

/// Isomorphism classes of the given size in a variety.
#[pyfunction]
fn enumerate(size: usize, variety: &str) -> PyResult<Vec<PyAlgebra>> {
    let algs = enumerate_exhaustive(size, variety.parse().map_err(value_error)?).map_err(value_error)?;
    Ok(algs.into_iter().map(|inner| PyAlgebra { inner }).collect())
}

/// Seeded random Płonka sums with at most `size` elements.
#[pyfunction]
#[pyo3(signature = (size, count, seed = 0))]
fn plonka_random(size: usize, count: usize, seed: u64) -> PyResult<Vec<PyAlgebra>> {
    let spec = CorpusSpec { size, variety: bisem::VarietyTag::Dbs, mode: CorpusMode::PlonkaRandom, seed, count };
    let instances = generate_plonka(&spec).map_err(value_error)?;
    Ok(instances.into_iter().map(|i| PyAlgebra { inner: i.sum }).collect())
}

fn logic(name: &str) -> PyResult<Logic> {
    name.parse().map_err(value_error)
}

fn valuation_dict(v: Valuation) -> BTreeMap<String, String> {
    v.into_iter().map(|(k, t)| (k, t.to_string())).collect()
}

/// `None` when valid, else a countervaluation.
#[pyfunction]
fn tautology(formula: &str, logic_name: &str) -> PyResult<Option<BTreeMap<String, String>>> {
    let f = parse_formula(formula).map_err(value_error)?;
    Ok(is_tautology(&f, logic(logic_name)?).map_err(value_error)?.map(valuation_dict))
}

#[pyfunction]
fn entails(premises: Vec<String>, conclusion: &str, logic_name: &str) -> PyResult<Option<BTreeMap<String, String>>> {
    let ps = premises.iter().map(|p| parse_formula(p)).collect::<Result<Vec<_>, _>>().map_err(value_error)?;
    let c = parse_formula(conclusion).map_err(value_error)?;
    Ok(consequence(&ps, &c, logic(logic_name)?).map_err(value_error)?.map(valuation_dict))
}

/// Value of `formula` as "0", "h" or "1".
#[pyfunction]
fn eval(formula: &str, valuation: BTreeMap<String, String>, logic_name: &str) -> PyResult<String> {
    let f = parse_formula(formula).map_err(value_error)?;
    let v = valuation
        .into_iter()
        .map(|(k, t)| t.parse::<Tv>().map(|t| (k, t)))
        .collect::<Result<Valuation, _>>()
        .map_err(value_error)?;
    Ok(evaluate(&f, &v, logic(logic_name)?.matrix()).map_err(value_error)?.to_string())
}

/// Number of sampled constant-free formulas that came out B3-valid.
#[pyfunction]
#[pyo3(signature = (depth = 8, samples = 1000, seed = 0))]
fn probe(depth: usize, samples: usize, seed: u64) -> usize {
    no_tautology_probe(depth, samples, seed).violations.len()
}

/// Runs the command line in-process: `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = bisem::cli::run(std::iter::once("bisem".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pybisem(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(plonka_random, m)?)?;
    m.add_function(wrap_pyfunction!(tautology, m)?)?;
    m.add_function(wrap_pyfunction!(entails, m)?)?;
    m.add_function(wrap_pyfunction!(eval, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
