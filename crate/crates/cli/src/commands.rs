use curvetower::equisig::{check_family, monomial_deformation, Condition61, EquisingReport, Family, ParamOrder};
use curvetower::exactalg::{parse_bipoly, rat_str, rint};
use curvetower::infinity::{ams_line_test, classify_low_genus, compactify, generate_example, AmsVerdict, AutoSeq};
use curvetower::invariants::{
    intersection_oracle, intersection_tower, milnor_number, tschirn_intersection_table, zeta_function, Route, ZetaFn,
};
use curvetower::newton::render_diagram;
use curvetower::tower::{build_tower_with, Tower, TowerOptions};
use curvetower::tschirn::approximate_root;
use curvetower::{BiPoly, Error, Rat};
use serde_json::Value;

use crate::report::{obj, s, Report};

/// A failure with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    pub fn parse(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::DegreeCap { .. } => 2,
            Error::Reducible(_)
            | Error::SmoothGerm
            | Error::NotWeierstrass(_)
            | Error::NotMonic
            | Error::ZeroPolynomial
            | Error::NotApplicable(_)
            | Error::NotLocalCoordinate
            | Error::Precondition(_)
            | Error::Divisibility(_) => 3,
            Error::NonRationalRoot(_) => 4,
            Error::Precision { .. } | Error::OutOfBox { .. } => 5,
            Error::Verification(_) => 1,
        };
        let msg = match &e {
            Error::SmoothGerm => format!("smooth germ / a_1=1: {}", e),
            Error::NotApplicable(m) if m.contains("a_1 = 1") => format!("smooth germ / a_1=1: {}", e),
            _ => e.to_string(),
        };
        Failure { code, msg }
    }
}

pub type Outcome = Result<Report, Failure>;

/// Input limits shared by all commands.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_degree: usize,
    pub max_retries: u32,
    pub max_precision: Option<usize>,
}

impl Limits {
    fn tower_options(&self) -> TowerOptions {
        TowerOptions { max_retries: self.max_retries, max_precision: self.max_precision, ..TowerOptions::default() }
    }

    pub fn poly(&self, text: &str) -> Result<BiPoly<Rat>, Failure> {
        let p = parse_bipoly(text)?;
        self.check_degree(p.total_degree().unwrap_or(0) as usize)?;
        Ok(p)
    }

    fn check_degree(&self, degree: usize) -> Result<(), Failure> {
        if degree > self.max_degree {
            return Err(Error::DegreeCap { degree, cap: self.max_degree }.into());
        }
        Ok(())
    }
}

fn echo(pairs: Vec<(&str, &str, &BiPoly<Rat>)>) -> Value {
    let mut v = Vec::new();
    for (k, raw, p) in pairs {
        v.push((k, obj(vec![("text", s(raw)), ("parsed", s(p.render()))])));
    }
    obj(v)
}

fn seq_value(seq: &AutoSeq) -> Value {
    Value::Array(seq.steps.iter().map(s).collect())
}

/// Exponent multiset of zeta as sorted {e, sign} records, one per factor.
pub fn zeta_value(z: &ZetaFn) -> Value {
    let mut fs: Vec<(u64, i64)> = Vec::new();
    for (e, p) in z.factors() {
        for _ in 0..p.unsigned_abs() {
            fs.push((*e, p.signum()));
        }
    }
    fs.sort();
    let factors = fs.iter().map(|(e, sg)| obj(vec![("e", s(e)), ("sign", s(if *sg > 0 { "+" } else { "-" }))]));
    obj(vec![("formula", s(z)), ("degree", s(z.degree())), ("factors", Value::Array(factors.collect()))])
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Tower => "tower",
        Route::Lemma => "lemma",
        Route::RootTable => "root-table",
        Route::DivisorTable => "divisor-table",
        Route::Oracle => "oracle",
    }
}

fn tower_value(t: &Tower) -> Value {
    let levels = t.levels.iter().map(|l| {
        obj(vec![
            ("i", s(l.index)),
            ("P", s(l.weight)),
            ("xi", s(rat_str(&l.xi))),
            ("m_f", s(l.m_f)),
            ("h", s(l.h.render())),
        ])
    });
    obj(vec![
        ("n", s(t.n)),
        ("k", s(t.k())),
        ("levels", Value::Array(levels.collect())),
        ("A", Value::Array(t.big_a.iter().map(s).collect())),
    ])
}

fn build(f: &BiPoly<Rat>, lim: &Limits) -> Result<Tower, Failure> {
    Ok(build_tower_with(f, &lim.tower_options())?)
}

pub struct AnalyzeFlags {
    pub with_table: bool,
    pub with_diagram: bool,
}

pub fn analyze(text: &str, flags: &AnalyzeFlags, lim: &Limits) -> Outcome {
    let f = lim.poly(text)?;
    let t = build(&f, lim)?;
    let mut r = Report::new("analyze", echo(vec![("poly", text, &f)]));
    if t.retries > 0 {
        r.warn(format!("series precision was doubled {} times", t.retries));
    }
    r.section("tower", tower_value(&t));
    let n = t.n as u32;
    let mut roots = Vec::new();
    for a in (1..=n).filter(|a| n.is_multiple_of(*a)) {
        let h = approximate_root(&f, a)?.root;
        roots.push(obj(vec![("a", s(a)), ("H", s(h.render()))]));
    }
    r.section("roots", Value::Array(roots));
    let pairs = t.puiseux.iter().map(|(n, m)| obj(vec![("n", s(n)), ("m", s(m))]));
    r.section("puiseux", Value::Array(pairs.collect()));
    let z = zeta_function(&t)?;
    r.section("zeta", zeta_value(&z));
    r.section("mu", s(milnor_number(&t)));
    if flags.with_table {
        let tab = tschirn_intersection_table(&t)?;
        let roots = tab.roots.iter().map(|((l, j), v)| obj(vec![("l", s(l)), ("j", s(j)), ("value", s(v))]));
        let divs = tab
            .divisors
            .iter()
            .map(|d| obj(vec![("a", s(d.a)), ("i", s(d.i)), ("value", s(d.value)), ("route", s(route_name(d.route)))]));
        if tab.divisors.iter().any(|d| d.route == Route::Tower) {
            r.warn("some divisor values are not covered by the closed forms and were computed along the tower");
        }
        r.section(
            "intersections",
            obj(vec![("roots", Value::Array(roots.collect())), ("divisors", Value::Array(divs.collect()))]),
        );
    }
    if flags.with_diagram {
        r.section("diagram", s(render_diagram(&f)?));
    }
    Ok(r)
}

pub fn roots(text: &str, index: u32, lim: &Limits) -> Outcome {
    let f = lim.poly(text)?;
    let h = approximate_root(&f, index)?;
    let mut r = Report::new("roots", echo(vec![("poly", text, &f)]));
    r.section("root", obj(vec![("index", s(index)), ("H", s(h.root.render()))]));
    Ok(r)
}

pub fn intersect(text: &str, with: &str, oracle: bool, lim: &Limits) -> Outcome {
    let f = lim.poly(text)?;
    let g = lim.poly(with)?;
    let t = build(&f, lim)?;
    let rec = intersection_tower(&t, &g)?;
    let mut r = Report::new("intersect", echo(vec![("poly", text, &f), ("with", with, &g)]));
    let depth = rec.depth.map_or(Value::Null, s);
    r.section(
        "intersection",
        obj(vec![("value", s(rec.value)), ("route", s(route_name(rec.route))), ("depth", depth)]),
    );
    if oracle {
        let o = intersection_oracle(&f, &g)?;
        r.section("oracle", obj(vec![("value", s(o)), ("agree", Value::Bool(o == rec.value))]));
        if o != rec.value {
            return Err(Failure { code: 1, msg: format!("tower gives {} but the resultant gives {}", rec.value, o) });
        }
    }
    Ok(r)
}

fn order_value(p: &ParamOrder) -> Value {
    obj(vec![("generic", s(p.generic)), ("worst", s(p.worst)), ("worst_nonzero", s(p.worst_nonzero))])
}

fn condition_value(c: &Condition61) -> Value {
    match c {
        Condition61::Holds { equality } => obj(vec![("status", s("holds")), ("equality", Value::Bool(*equality))]),
        Condition61::Fails(why) => obj(vec![("status", s("fails")), ("reason", s(why))]),
        Condition61::Degenerate { finite, mu_constant } => obj(vec![
            ("status", s("degenerate")),
            ("finite", Value::Bool(*finite)),
            ("mu_constant", Value::Bool(*mu_constant)),
        ]),
    }
}

fn equising_value(rep: &EquisingReport) -> Value {
    let mu = rep.mu_samples.iter().map(|m| obj(vec![("t", s(rat_str(&m.tau))), ("mu", m.mu.map_or(Value::Null, s))]));
    let right = rep.right_samples.iter().map(|(t, v)| obj(vec![("s", s(rat_str(t))), ("value", s(v))]));
    obj(vec![
        ("n", s(rep.n)),
        ("k", s(rep.k)),
        ("a_k", s(rep.a_k)),
        ("mu", s(rep.mu_base)),
        ("face_t_free", Value::Bool(rep.face_t_free)),
        ("roots_t_free", Value::Array(rep.roots_t_free.iter().map(|b| Value::Bool(*b)).collect())),
        ("left_order", rep.left_order.as_ref().map_or(Value::Null, order_value)),
        ("left", rep.left.map_or(Value::Null, s)),
        ("right_order", order_value(&rep.right_order)),
        ("right_samples", Value::Array(right.collect())),
        ("mu_samples", Value::Array(mu.collect())),
        ("condition", condition_value(&rep.condition_61)),
        ("verdict", s(&rep.verdict)),
        ("certified", Value::Bool(rep.verdict.certified())),
    ])
}

pub fn equising_family(text: &str, lim: &Limits) -> Outcome {
    let fam = Family::parse(text)?;
    lim.check_degree(fam.f.total_degree().unwrap_or(0) as usize)?;
    let rep = check_family(&fam)?;
    let input = obj(vec![("family", obj(vec![("text", s(text)), ("parsed", s(fam.f.render()))]))]);
    let mut r = Report::new("equising", input);
    r.section("equising", equising_value(&rep));
    Ok(r)
}

pub fn equising_deform(text: &str, m: u64, lim: &Limits) -> Outcome {
    let f = lim.poly(text)?;
    let md = monomial_deformation(&f, m)?;
    let rep = check_family(&md.family)?;
    let mut input = echo(vec![("poly", text, &f)]);
    input.as_object_mut().unwrap().insert("m".into(), s(m));
    let mut r = Report::new("equising", input);
    let sampled =
        md.sampled.iter().map(|((t, u), v)| obj(vec![("t", s(rat_str(t))), ("s", s(rat_str(u))), ("value", s(v))]));
    r.section(
        "deformation",
        obj(vec![
            ("family", s(md.family.f.render())),
            ("n", s(md.n)),
            ("m", s(md.m)),
            ("nm", s(md.nm)),
            ("k", s(md.k)),
            ("a_k", s(md.a_k)),
            ("generic_intersection", s(md.generic_intersection)),
            ("sampled", Value::Array(sampled.collect())),
            ("left", md.left.map_or(Value::Null, s)),
            ("mixed_bound", md.mixed_bound.as_ref().map_or(Value::Null, |b| s(rat_str(b)))),
            ("triangle_bound", s(rat_str(&md.triangle_bound))),
        ]),
    );
    r.section("equising", equising_value(&rep));
    Ok(r)
}

pub enum InfinityMode {
    Report,
    Ams,
    Classify,
}

pub fn infinity(text: &str, mode: InfinityMode, lim: &Limits) -> Outcome {
    let f = lim.poly(text)?;
    let mut r = Report::new("infinity", echo(vec![("poly", text, &f)]));
    match mode {
        InfinityMode::Report => {
            let rep = compactify(&f, &rint(0))?;
            let face = rep.face.as_ref().map_or(Value::Null, |fc| {
                obj(vec![("a1", s(fc.a1)), ("b1", s(fc.b1)), ("xi", s(rat_str(&fc.xi))), ("A2", s(fc.big_a2))])
            });
            r.section(
                "infinity",
                obj(vec![
                    ("normalized", s(rep.f.render())),
                    ("normalization", seq_value(&rep.normalization)),
                    ("n", s(rep.n)),
                    ("germ", s(rep.f_local.render())),
                    ("line", Value::Bool(rep.line)),
                    ("face", face),
                    ("c1", rep.c1.map_or(Value::Null, s)),
                    ("mu_inf", rep.mu_inf.map_or(Value::Null, s)),
                    ("tower", rep.tower.as_ref().map_or(Value::Null, tower_value)),
                ]),
            );
        }
        InfinityMode::Ams => {
            let res = ams_line_test(&f)?;
            let trace = res
                .trace
                .iter()
                .map(|t| obj(vec![("degree", s(t.degree)), ("a1", s(t.a1)), ("b1", s(t.b1)), ("c1", s(t.c1))]));
            let mut v = vec![
                ("verdict", s(if res.is_line() { "LINE" } else { "NOT LINE" })),
                ("steps", seq_value(&res.seq)),
                ("final", s(res.final_f.render())),
                ("trace", Value::Array(trace.collect())),
                ("shear_loops", s(res.trace.len())),
                ("bound", s(res.bound)),
            ];
            if let AmsVerdict::NotLine { n, a1, c1, genus } = &res.verdict {
                v.push(("n", s(n)));
                v.push(("a1", s(a1)));
                v.push(("c1", s(c1)));
                v.push(("genus", genus.as_ref().map_or(Value::Null, |g| s(g.genus))));
            }
            r.section("ams", obj(v));
        }
        InfinityMode::Classify => {
            let c = classify_low_genus(&f)?;
            r.section(
                "classify",
                obj(vec![
                    ("genus", s(c.genus)),
                    ("model", s(c.model.render())),
                    ("description", c.description.map_or(Value::Null, s)),
                    ("n", s(c.n)),
                    ("k", s(c.k)),
                    ("a1", s(c.a1)),
                    ("c1", s(c.c1)),
                    ("reduction", seq_value(&c.reduction)),
                ]),
            );
        }
    }
    Ok(r)
}

pub fn generate(weights: &[u32], lim: &Limits) -> Outcome {
    let g = generate_example(weights, lim.max_degree)?;
    let list = weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
    let mut r = Report::new("generate", obj(vec![("weights", s(list))]));
    let ws = g.weights.iter().map(|(a, b)| s(format!("({},{})", a, b)));
    r.section(
        "example",
        obj(vec![
            ("F", s(g.f.render())),
            ("n", s(g.n)),
            ("weights", Value::Array(ws.collect())),
            ("roots", Value::Array(g.roots.iter().map(|h| s(h.render())).collect())),
            ("mu", s(g.mu)),
            ("rectification", seq_value(&g.seq)),
        ]),
    );
    Ok(r)
}
