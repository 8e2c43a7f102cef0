//! Bundled end-to-end scenarios on the `(ℂ*)² × ℂP¹` example, each printing
//! computed against expected values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use torprod::catalog::{self, ExampleCocycles};
use torprod::exactalg::{self, CoefficientRing, ExactMatrix, Matrix};
use torprod::koszul::TwistData;
use torprod::simplicial::CharacteristicData;
use torprod::torcohomology::{CohomologyClass, ProductKind, TorTable};
use torprod::toricmorphism::{
    cox_projection, hat_tor_phi, ideal_contains, ideal_i_sigma, join_tensor, omega, tor_phi, ChainMaps, InducedMap,
    ToricMorphism,
};

use crate::{CliError, Outcome};

const Q: CoefficientRing = CoefficientRing::Rationals;

struct Report {
    out: String,
    failures: usize,
}

impl Report {
    fn new(title: &str) -> Self {
        Report { out: format!("{title}\n"), failures: 0 }
    }

    fn check(&mut self, what: &str, computed: impl ToString, expected: impl ToString) {
        let (c, e) = (computed.to_string(), expected.to_string());
        if c == e {
            let _ = writeln!(self.out, "[ok] {what}: {c}");
        } else {
            self.failures += 1;
            let _ = writeln!(self.out, "[MISMATCH] {what}: computed {c}, expected {e}");
        }
    }

    fn finish(self) -> Outcome {
        let mut out = self.out;
        let _ = writeln!(out, "{}", if self.failures == 0 { "all checks passed" } else { "some checks FAILED" });
        Outcome { stdout: out, code: if self.failures == 0 { 0 } else { 1 } }
    }
}

/// Named classes of a table, used to print classes in the familiar basis.
struct Names<'a> {
    table: &'a TorTable,
    classes: Vec<(String, CohomologyClass)>,
}

impl<'a> Names<'a> {
    fn new(table: &'a TorTable, cocycles: &ExampleCocycles, suffix: &str) -> Self {
        let named = [("a1", &cocycles.a1), ("a2", &cocycles.a2), ("b", &cocycles.b), ("c", &cocycles.c)];
        let classes = named
            .iter()
            .map(|(n, z)| (format!("{n}{suffix}"), table.reduce(z).expect("named cocycles are cocycles")))
            .collect();
        Names { table, classes }
    }

    fn get(&self, name: &str) -> CohomologyClass {
        self.classes.iter().find(|(n, _)| n.starts_with(name)).expect("known name").1.clone()
    }

    /// `x` as a combination of the named classes of its degree.
    fn show(&self, x: &CohomologyClass) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let basis: Vec<&(String, CohomologyClass)> =
            self.classes.iter().filter(|(_, c)| c.degree == x.degree).collect();
        let m = Matrix::from_fn(x.coords.len(), basis.len(), |r, c| basis[c].1.coords[r].clone());
        let exact = ExactMatrix::new(self.table.ring(), m).expect("integral");
        match exactalg::solve(&exact, &x.coords) {
            Ok(Some(y)) => torprod::facering::format_sum(
                y.iter()
                    .zip(&basis)
                    .filter(|(c, _)| **c != BigRational::from_integer(0.into()))
                    .map(|(c, (n, _))| (c, n.clone())),
            ),
            _ => format!("{:?}", x.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
        }
    }
}

pub fn run(name: &str) -> Result<Outcome, CliError> {
    match name {
        "cstar2-p1" => Ok(cstar2_p1()),
        "basis-change" => Ok(basis_change()),
        "diagonal" => Ok(diagonal()),
        "omega" => Ok(omega_example()),
        "cox-ideal" => Ok(cox_ideal()),
        _ => {
            if let Some(r) = name.strip_prefix("power-map:") {
                let r: u32 = r.parse().map_err(|_| CliError::Usage(format!("bad power {r:?}")))?;
                return Ok(power_map(r));
            }
            Err(CliError::Usage(format!(
                "unknown example {name:?}; known: cstar2-p1, basis-change, power-map:R, diagonal, omega, cox-ideal"
            )))
        }
    }
}

fn example_table(ring: CoefficientRing) -> TorTable {
    TorTable::compute(Arc::new(catalog::cstar2_p1()), ring, None)
}

fn ranks(t: &TorTable) -> String {
    let parts: Vec<String> = t
        .bidegrees()
        .iter()
        .map(|(b, s)| {
            let tors: Vec<String> = s.torsion.iter().map(|x| format!("+Z/{x}")).collect();
            format!("({},{}):{}{}", b.0, b.1, s.free_rank, tors.join(""))
        })
        .collect();
    parts.join(" ")
}

fn cstar2_p1() -> Outcome {
    let mut r = Report::new("(C*)^2 x CP^1: rays (1,1,1) and (-1,-1,-1), ghosts e1, e2");
    let expected = "(-2,4):1 (-2,6):1 (-1,2):2 (-1,4):2 (0,0):1 (0,2):1";
    let tq = example_table(Q);
    r.check("Tor ranks over Q", ranks(&tq), expected);
    r.check("Tor ranks over Z", ranks(&example_table(CoefficientRing::Integers)), expected);
    let k = tq.complex();
    let f = k.face_ring();
    for (i, j, want) in
        [(0, 0, "t_w"), (1, 1, "t_w"), (2, 2, "t_w"), (1, 0, "t_v + t_w"), (2, 0, "t_v + t_w"), (2, 1, "t_v + t_w")]
    {
        r.check(&format!("q{}{}", i + 1, j + 1), f.format(k.twist().get(i, j)), want);
    }
    let names = Names::new(&tq, &ExampleCocycles::example(k), "");
    let (a1, a2) = (names.get("a1"), names.get("a2"));
    let tw = tq.multiply(ProductKind::Twisted, &a1, &a2).expect("product");
    let un = tq.multiply(ProductKind::Untwisted, &a1, &a2).expect("product");
    r.check("a1*a2", names.show(&tw), "b - c");
    r.check("a1.a2", names.show(&un), "b");
    let mut differing = Vec::new();
    let deg1 = [("a1", &a1), ("a2", &a2)];
    for (i, (nx, x)) in deg1.iter().enumerate() {
        for (ny, y) in &deg1[i..] {
            let t = tq.multiply(ProductKind::Twisted, x, y).expect("product");
            let u = tq.multiply(ProductKind::Untwisted, x, y).expect("product");
            if t != u {
                differing.push(format!("({nx},{ny})"));
            }
        }
    }
    r.check("degree-one pairs where the products differ", differing.join(" "), "(a1,a2)");
    r.finish()
}

struct MorphismSetup {
    maps: ChainMaps,
    dom: TorTable,
    cod: TorTable,
}

fn setup(m: ToricMorphism) -> MorphismSetup {
    let maps = ChainMaps::new(m, Q).expect("catalog morphism");
    let dom = TorTable::for_complex(
        maps.target_complex().clone(),
        torprod::torcohomology::default_max_total_degree(maps.target_complex().data()),
    );
    let cod = TorTable::for_complex(
        maps.source_complex().clone(),
        torprod::torcohomology::default_max_total_degree(maps.source_complex().data()),
    );
    MorphismSetup { maps, dom, cod }
}

/// Pairs of domain generators on which `map` fails to be multiplicative for
/// the twisted products, out of all pairs checked.
fn multiplicativity(s: &MorphismSetup, map: &InducedMap) -> (usize, usize) {
    let mut bad = 0;
    let mut total = 0;
    for d1 in s.dom.degrees() {
        for d2 in s.dom.degrees() {
            if d1 + d2 > s.dom.max_total_degree() {
                continue;
            }
            for i in 0..s.dom.generators(d1).len() {
                for j in 0..s.dom.generators(d2).len() {
                    let (x, y) = (s.dom.basis_class(d1, i), s.dom.basis_class(d2, j));
                    let xy = s.dom.multiply(ProductKind::Twisted, &x, &y).expect("product");
                    let lhs = map.apply(&s.cod, &xy);
                    let rhs = s
                        .cod
                        .multiply(ProductKind::Twisted, &map.apply(&s.cod, &x), &map.apply(&s.cod, &y))
                        .expect("product");
                    total += 1;
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    (bad, total)
}

fn basis_change() -> Outcome {
    let mut r = Report::new("basis change: e3 -> (1,1,1) from rays +-e3 onto rays +-(1,1,1)");
    let s = setup(catalog::basis_change());
    let dn = Names::new(&s.dom, &ExampleCocycles::example(s.maps.target_complex()), "");
    let cn = Names::new(&s.cod, &ExampleCocycles::standard(s.maps.source_complex()), "'");
    r.check("lift is the identity", s.maps.lift().a_hat == Matrix::identity(4), true);
    r.check("hat q vanishes", s.maps.hat_q().is_zero(), true);
    let plain = tor_phi(&s.maps, &s.dom, &s.cod).expect("induced map");
    let hat = hat_tor_phi(&s.maps, &s.dom, &s.cod).expect("induced map");
    for n in ["a1", "a2", "b", "c"] {
        r.check(&format!("Tor(phi)({n})"), cn.show(&plain.apply(&s.cod, &dn.get(n))), format!("{n}'"));
    }
    let prod = s.dom.multiply(ProductKind::Twisted, &dn.get("a1"), &dn.get("a2")).expect("product");
    let lhs = plain.apply(&s.cod, &prod);
    let rhs = s
        .cod
        .multiply(ProductKind::Twisted, &plain.apply(&s.cod, &dn.get("a1")), &plain.apply(&s.cod, &dn.get("a2")))
        .expect("product");
    r.check("Tor(phi)(a1*a2)", cn.show(&lhs), "b' - c'");
    r.check("Tor(phi)(a1)*Tor(phi)(a2)", cn.show(&rhs), "b'");
    for (n, want) in [("a1", "a1'"), ("a2", "a2'"), ("c", "c'"), ("b", "b' + c'")] {
        r.check(&format!("hat Tor(phi)({n})"), cn.show(&hat.apply(&s.cod, &dn.get(n))), want);
    }
    let (bad, total) = multiplicativity(&s, &hat);
    r.check(&format!("hat Tor(phi) multiplicative on {total} generator pairs"), bad, 0);
    r.finish()
}

fn power_map(rp: u32) -> Outcome {
    let mut r = Report::new(&format!("power map r = {rp} on (C*)^2 x CP^1"));
    let data = Arc::new(catalog::cstar2_p1());
    let s = setup(ToricMorphism::power_map(data.clone(), rp));
    let q = TwistData::canonical(s.maps.source_complex().face_ring(), &data);
    let factor = -BigInt::from(rp * rp.saturating_sub(1) / 2);
    let mut ok = true;
    for i in 0..3 {
        for j in 0..i {
            let want: Vec<BigInt> = q.coefficients(i, j).iter().map(|c| c * &factor).collect();
            ok &= s.maps.hat_q().coefficients(i, j) == want.as_slice();
        }
    }
    r.check(&format!("hat q = {factor} q"), ok, true);
    let f = s.maps.source_complex().face_ring();
    r.check(
        "hat q21",
        f.format(s.maps.hat_q().get(1, 0)),
        f.format(&f.scale(q.get(1, 0), &BigRational::from_integer(factor.clone()))),
    );
    let names = Names::new(&s.cod, &ExampleCocycles::example(s.maps.source_complex()), "");
    let dn = Names::new(&s.dom, &ExampleCocycles::example(s.maps.target_complex()), "");
    let hat = hat_tor_phi(&s.maps, &s.dom, &s.cod).expect("induced map");
    let (r2, r1) = (rp * rp, rp * rp.saturating_sub(1));
    let b = hat.apply(&s.cod, &dn.get("b"));
    let expect_b = format_combo(&[(r2 as i64, "b"), (-(r1 as i64), "c")]);
    r.check("hat Tor(phi)(b)", names.show(&b), expect_b);
    let prod = s.dom.multiply(ProductKind::Twisted, &dn.get("a1"), &dn.get("a2")).expect("product");
    let expect_prod = format_combo(&[(r2 as i64, "b"), (-(r2 as i64), "c")]);
    r.check("hat Tor(phi)(a1*a2)", names.show(&hat.apply(&s.cod, &prod)), expect_prod);
    let (bad, total) = multiplicativity(&s, &hat);
    r.check(&format!("hat Tor(phi) multiplicative on {total} generator pairs"), bad, 0);
    r.finish()
}

fn format_combo(terms: &[(i64, &str)]) -> String {
    let terms: Vec<(BigRational, String)> = terms
        .iter()
        .filter(|(c, _)| *c != 0)
        .map(|(c, n)| (BigRational::from_integer(BigInt::from(*c)), n.to_string()))
        .collect();
    torprod::facering::format_sum(terms.iter().map(|(c, n)| (c, n.clone())))
}

fn diagonal() -> Outcome {
    let mut r = Report::new("diagonal into the join of (C*)^2 x CP^1 with itself");
    let data = Arc::new(catalog::cstar2_p1());
    let m = ToricMorphism::diagonal(data).expect("diagonal is a morphism");
    let maps = ChainMaps::new(m, Q).expect("catalog morphism");
    r.check("hat q vanishes", maps.hat_q().is_zero(), true);
    let k = maps.source_complex();
    let t = TorTable::for_complex(k.clone(), torprod::torcohomology::default_max_total_degree(k.data()));
    let (mut bad, mut total) = (0, 0);
    for d1 in t.degrees() {
        for d2 in t.degrees() {
            if d1 + d2 > t.max_total_degree() {
                continue;
            }
            for (i, x) in t.generators(d1).iter().enumerate() {
                for (j, y) in t.generators(d2).iter().enumerate() {
                    let z = join_tensor(maps.target_complex(), k, k, &x.representative, &y.representative);
                    let image = t.reduce_in_degree(&maps.hat_xi(&z).expect("chain map"), d1 + d2).expect("cocycle");
                    let prod = t
                        .multiply(ProductKind::Twisted, &t.basis_class(d1, i), &t.basis_class(d2, j))
                        .expect("product");
                    total += 1;
                    if image != prod {
                        bad += 1;
                    }
                }
            }
        }
    }
    r.check(&format!("hat Tor(diag)(x (x) y) = x*y on {total} generator pairs"), bad, 0);
    r.finish()
}

fn omega_example() -> Outcome {
    let mut r = Report::new("Omega on (C*)^2 x CP^1 over Q");
    let t = example_table(Q);
    let names = Names::new(&t, &ExampleCocycles::example(t.complex()), "");
    let om = omega(&t).expect("2 is invertible over Q");
    for (n, want) in [("a1", "a1"), ("a2", "a2"), ("c", "c"), ("b", "b + c")] {
        r.check(&format!("Omega*({n})"), names.show(&om.apply(&t, &names.get(n))), want);
    }
    let (a1, a2) = (names.get("a1"), names.get("a2"));
    let tw = t.multiply(ProductKind::Twisted, &a1, &a2).expect("product");
    r.check("Omega*(a1*a2)", names.show(&om.apply(&t, &tw)), "b");
    let un = t.multiply(ProductKind::Untwisted, &om.apply(&t, &a1), &om.apply(&t, &a2)).expect("product");
    r.check("Omega*(a1).Omega*(a2)", names.show(&un), "b");
    let table = t.product_table(ProductKind::Twisted).expect("products");
    let mut bad = 0;
    for ((l, rr), prod) in &table.entries {
        let x = om.apply(&t, &t.basis_class(l.0, l.1));
        let y = om.apply(&t, &t.basis_class(rr.0, rr.1));
        if om.apply(&t, prod) != t.multiply(ProductKind::Untwisted, &x, &y).expect("product") {
            bad += 1;
        }
    }
    r.check(&format!("Omega* intertwines the products on {} pairs", table.entries.len()), bad, 0);
    r.finish()
}

fn cox_ideal() -> Outcome {
    let mut r = Report::new("Cox projection and the ideal I_Sigma for (C*)^2 x CP^1");
    let data = Arc::new(catalog::cstar2_p1());
    let s = setup(cox_projection(data.clone()).expect("projection is a morphism"));
    r.check("hat q(kappa) vanishes", s.maps.hat_q().is_zero(), true);
    let plain = tor_phi(&s.maps, &s.dom, &s.cod).expect("induced map");
    let hat = hat_tor_phi(&s.maps, &s.dom, &s.cod).expect("induced map");
    r.check("hat Tor(kappa) = Tor(kappa)", plain == hat, true);
    let ideal = ideal_i_sigma(&s.dom, &s.cod).expect("ideal");
    let names = Names::new(&s.dom, &ExampleCocycles::example(s.maps.target_complex()), "");
    r.check("c in I_Sigma", ideal_contains(&s.dom, &ideal[&2], &names.get("c")), true);
    r.check("I_Sigma in degree 0", ideal.get(&0).map(|v| v.len()).unwrap_or(0), 0);
    // upstairs every 1 (x) f of positive degree is a coboundary
    let k = s.maps.source_complex();
    let mut nonzero = 0;
    for deg in [2, 4] {
        for m in k.face_ring().basis_of_degree(deg) {
            let z = k.from_face(&k.face_ring().monomial(m, &BigRational::from_integer(1.into())));
            if !s.cod.reduce(&z).expect("cocycle").is_zero() {
                nonzero += 1;
            }
        }
    }
    r.check("classes of 1 (x) f, deg f > 0, on moment-angle data", nonzero, 0);
    let suite: Vec<(&str, ToricMorphism)> = vec![
        ("basis change", catalog::basis_change()),
        ("power map 2", ToricMorphism::power_map(data.clone(), 2)),
        ("power map 3", ToricMorphism::power_map(data, 3)),
    ];
    for (name, m) in suite {
        let (ok, total) = congruence(m);
        r.check(&format!("{name}: hat Tor = Tor mod I_Sigma' on {total} generators"), ok, total);
    }
    r.finish()
}

/// Generators `x` with `(T̂or(φ) − Tor(φ))(x) ∈ I_{Σ′}`, out of all.
pub fn congruence(m: ToricMorphism) -> (usize, usize) {
    let s = setup(m);
    let src = s.maps.source_complex().data_arc().clone();
    let upstairs = TorTable::compute(
        Arc::new(CharacteristicData::moment_angle(src.poset_arc().clone())),
        Q,
        Some(s.cod.max_total_degree()),
    );
    let ideal: BTreeMap<usize, Vec<Vec<BigRational>>> = ideal_i_sigma(&s.cod, &upstairs).expect("ideal");
    let plain = tor_phi(&s.maps, &s.dom, &s.cod).expect("induced map");
    let hat = hat_tor_phi(&s.maps, &s.dom, &s.cod).expect("induced map");
    let (mut ok, mut total) = (0, 0);
    for d in s.dom.degrees() {
        for i in 0..s.dom.generators(d).len() {
            let x = s.dom.basis_class(d, i);
            let diff = s.cod.sub_classes(&hat.apply(&s.cod, &x), &plain.apply(&s.cod, &x));
            total += 1;
            if ideal_contains(&s.cod, ideal.get(&d).map(|v| v.as_slice()).unwrap_or(&[]), &diff) {
                ok += 1;
            }
        }
    }
    (ok, total)
}
