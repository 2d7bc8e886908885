use std::fmt::Write as _;

use serde_json::{json, Value};
use toric_core::families::Family;
use toric_core::hochster::{moment_angle_poincare, multigraded_betti, poincare_duality_check};
use toric_core::linalg::Field;
use toric_core::massey::{
    find_triple, massey_product, pmas_classes, q_classes, ungraded_indeterminacy, MasseyReport, Strategy,
};
use toric_core::nestohedra::{BuildingSet, BuildingSetJson};
use toric_core::poly_ring::closure::{family_closure, gdfp_check};
use toric_core::poly_ring::series::{series_build, series_to_json, Identity, Region};
use toric_core::poly_ring::{expected_boundary, Registry, RingElement};
use toric_core::tor_algebra::{Dga, DgaElement};
use toric_core::{Config, FieldSpec, PrimeField, Rationals, SimplicialComplex};

use crate::{Failure, Output, Source};

type Res = Result<Output, Failure>;

fn bad(msg: impl Into<String>) -> Failure {
    Failure::BadInput(msg.into())
}

fn family_of(name: &str) -> Result<Family, Failure> {
    Ok(name.parse::<Family>()?)
}

fn family_and_n(source: &Source) -> Result<(Family, usize), Failure> {
    let f = family_of(source.family.as_deref().ok_or_else(|| bad("give --family and --n, or --input"))?)?;
    let n = source.n.ok_or_else(|| bad("--family needs --n"))?;
    Ok((f, n))
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn load_complex(source: &Source) -> Result<(SimplicialComplex, Option<Family>), Failure> {
    if let Some(p) = &source.input {
        return Ok((SimplicialComplex::from_json(&read(p)?)?, None));
    }
    let (f, n) = family_and_n(source)?;
    Ok((f.complex(n)?, Some(f)))
}

fn load_building_set(source: &Source) -> Result<BuildingSet, Failure> {
    if let Some(p) = &source.input {
        let j: BuildingSetJson = serde_json::from_str(&read(p)?).map_err(|e| bad(e.to_string()))?;
        return Ok(BuildingSet::from_json_value(&j)?);
    }
    let (f, n) = family_and_n(source)?;
    Ok(f.building_set(n)?)
}

fn parse_elements(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad(format!("bad element list `{s}`")))).collect()
}

fn polynomial(coeffs: &[usize], var: &str) -> String {
    let parts: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| match (d, c) {
            (0, _) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}{var}"),
            (_, 1) => format!("{var}^{d}"),
            _ => format!("{c}{var}^{d}"),
        })
        .collect();
    parts.join(" + ")
}

fn names(k: &SimplicialComplex, sets: &[toric_core::VertexSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| k.labels_of(s).into_iter().map(String::from).collect()).collect()
}

pub fn complex(source: &Source, links: bool, emit: bool) -> Res {
    let (k, _) = load_complex(source)?;
    let f = k.face_counts();
    let sphere = k.sphere_check();
    let mnf = k.minimal_nonfaces();
    let mut text = String::new();
    let _ = writeln!(text, "vertices {}, dimension {}, facets {}", k.num_vertices(), k.dim(), k.facets().len());
    let _ = writeln!(text, "f-vector {f:?}");
    let _ = writeln!(text, "flag {}", k.is_flag());
    let _ = writeln!(text, "sphere {}", match &sphere {
        Ok(()) => "yes".to_string(),
        Err(e) => format!("no ({e})"),
    });
    let _ = writeln!(text, "minimal nonfaces {}", mnf.len());
    let mut j = json!({
        "vertices": k.num_vertices(),
        "dim": k.dim(),
        "facets": k.facets().len(),
        "f_vector": f,
        "flag": k.is_flag(),
        "sphere": sphere.is_ok(),
        "minimal_nonfaces": names(&k, &mnf),
    });
    if links {
        let bad_faces = k.faces_with_nonfull_links();
        let _ = writeln!(text, "faces with a non-full link {}", bad_faces.len());
        for s in &bad_faces {
            let _ = writeln!(text, "  {}", k.format_set(s));
        }
        j["nonfull_links"] = json!(names(&k, &bad_faces));
    }
    if emit {
        let _ = writeln!(text, "{}", k.to_json());
        j["complex"] = json!(k.to_json_value());
    }
    Ok(Output { json: j, text, ok: true })
}

pub fn betti(source: &Source, cfg: &Config) -> Res {
    let (k, _) = load_complex(source)?;
    let table = multigraded_betti(&k, cfg.field, cfg.vertex_limit)?;
    let p = moment_angle_poincare(&k, cfg.field, cfg.vertex_limit)?;
    let duality = if k.sphere_check().is_ok() { Some(poincare_duality_check(&k, cfg.field, cfg.vertex_limit)?) } else { None };
    let entries = table.to_entries();
    let mut text = String::new();
    let _ = writeln!(text, "P(Z_K; t) = {}", polynomial(&p, "t"));
    let _ = writeln!(text, "{:>4} {:>4} {:>8}", "-i", "2j", "beta");
    for (i, j, r) in table.bigraded() {
        let _ = writeln!(text, "{:>4} {:>4} {:>8}", if i == 0 { "0".to_string() } else { format!("-{i}") }, 2 * j, r);
    }
    let _ = writeln!(text, "{} nonzero multigraded entries", entries.len());
    if let Some(top) = entries.last() {
        let _ = writeln!(text, "top entry i={} J=[{}] rank {}", top.i, top.j.join(","), top.rank);
    }
    if let Some(d) = duality {
        let _ = writeln!(text, "Poincaré duality {}", if d { "holds" } else { "fails" });
    }
    let j = json!({
        "field": cfg.field.to_string(),
        "poincare": p,
        "table": entries,
        "bigraded": table.bigraded().into_iter().map(|(i, j, r)| json!({"i": i, "j": j, "rank": r})).collect::<Vec<_>>(),
        "poincare_duality": duality,
    });
    Ok(Output { json: j, text, ok: true })
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad(format!("bad range `{s}`")));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if lo < 2 || hi < lo {
        return Err(bad(format!("bad range `{s}`: need 2 <= lo <= hi")));
    }
    Ok((lo, hi))
}

pub fn massey(source: &Source, k: Option<&str>, strategy: &str, cfg: &Config, explicit_field: bool) -> Res {
    let strategy: Strategy = strategy.parse()?;
    let field = match (strategy, explicit_field) {
        (Strategy::ExhaustiveGf2, false) => FieldSpec::Prime(2),
        (Strategy::ExhaustiveGf2, true) if cfg.field != FieldSpec::Prime(2) => {
            return Err(bad("exhaustive enumeration runs over GF(2)"));
        }
        _ => cfg.field,
    };
    let (complex, family) = load_complex(source)?;
    if complex.num_vertices() > cfg.vertex_limit {
        return Err(Failure::Limit(format!("vertex count {} exceeds the limit {}", complex.num_vertices(), cfg.vertex_limit)));
    }
    let n = source.n.unwrap_or(3);
    let range = match k {
        Some(s) => parse_range(s)?,
        None => match family {
            Some(Family::Q) | Some(Family::PMas) => (2, n),
            _ => (3, 3),
        },
    };
    match field {
        FieldSpec::Rational => massey_with(&Dga::new(&complex, Rationals), family, n, range, strategy, cfg),
        FieldSpec::Prime(p) => massey_with(&Dga::new(&complex, PrimeField::new(p)?), family, n, range, strategy, cfg),
    }
}

fn report_line(r: &MasseyReport, names: &[String]) -> String {
    let yn = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    let strict = serde_json::to_value(r.strict).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    format!(
        "<{}>: k={} defined={} strict={} nontrivial={} values={} degree {}",
        names.join(", "),
        r.k,
        r.defined,
        strict,
        yn(r.nontrivial),
        r.value_count.map_or("-".to_string(), |c| c.to_string()),
        r.target_degree
    )
}

fn massey_with<F: Field>(
    dga: &Dga<'_, F>,
    family: Option<Family>,
    n: usize,
    (lo, hi): (usize, usize),
    strategy: Strategy,
    cfg: &Config,
) -> Res {
    let canonical: Option<Vec<DgaElement<F>>> = match family {
        Some(Family::Q) => Some(q_classes(dga, n)?),
        Some(Family::PMas) => Some(pmas_classes(dga, n)?),
        _ => None,
    };
    let mut runs: Vec<(Vec<DgaElement<F>>, MasseyReport)> = Vec::new();
    match canonical {
        Some(classes) => {
            if hi > classes.len() {
                return Err(bad(format!("only {} canonical classes", classes.len())));
            }
            for len in lo..=hi {
                for s in 0..=classes.len() - len {
                    let window = classes[s..s + len].to_vec();
                    let r = massey_product(dga, &window, strategy, cfg.massey_budget)?;
                    runs.push((window, r));
                }
            }
        }
        None => {
            if (lo, hi) != (3, 3) {
                return Err(bad("without canonical classes only the triple search (--k 3) is available"));
            }
            if let Some(found) = find_triple(dga, strategy, cfg.massey_budget, 3)? {
                runs.push(found);
            }
        }
    }
    let mut text = String::new();
    let mut out = Vec::new();
    let mut longest: Option<usize> = None;
    for (classes, r) in &runs {
        let names: Vec<String> = classes.iter().map(|c| dga.format(c)).collect();
        let _ = writeln!(text, "{}", report_line(r, &names));
        let mut entry = json!({ "classes": names, "report": r });
        if r.k == 3 && r.defined {
            let w = ungraded_indeterminacy(dga, classes)?;
            match &w {
                Some(w) => {
                    let (l, r) = if w.side == 0 { (&classes[0], &w.z) } else { (&w.z, &classes[2]) };
                    let _ = writeln!(text, "  ungraded indeterminacy: ({}) * ({}) = {} is not exact", dga.format(l), dga.format(r), dga.format(&w.product));
                }
                None => {
                    let _ = writeln!(text, "  ungraded indeterminacy vanishes");
                }
            }
            entry["ungraded_indeterminacy"] = json!(w.as_ref().map(|w| json!({
                "side": w.side + 1,
                "z": dga.to_json(&w.z),
                "product": dga.to_json(&w.product),
            })));
        }
        if r.defined && r.strict.is_strict() && r.nontrivial == Some(true) {
            longest = Some(longest.map_or(r.k, |l| l.max(r.k)));
        }
        out.push(entry);
    }
    if runs.is_empty() {
        let _ = writeln!(text, "no strictly defined nontrivial triple product found");
    }
    if let Some(l) = longest {
        let _ = writeln!(text, "strict nontrivial {l}-fold product: l_EM >= {}", l - 1);
    }
    let j = json!({ "field": dga.field().spec().to_string(), "products": out, "l_em_lower_bound": longest.map(|l| l - 1) });
    Ok(Output { json: j, text, ok: true })
}

pub fn nesto(source: &Source, restrict: Option<&str>, contract: Option<&str>, emit: bool) -> Res {
    let mut b = load_building_set(source)?;
    let mut op = None;
    if let Some(s) = restrict {
        let m = b.mask_of(&parse_elements(s)?)?;
        b = b.restriction(m)?;
        op = Some(format!("restriction to {{{s}}}"));
    }
    if let Some(s) = contract {
        let m = b.mask_of(&parse_elements(s)?)?;
        b = b.contraction(m)?;
        op = Some(format!("contraction of {{{s}}}"));
    }
    let k = b.nested_set_complex();
    let f = k.face_counts();
    let mut text = String::new();
    if let Some(o) = &op {
        let _ = writeln!(text, "{o}");
    }
    let _ = writeln!(text, "ground {}, {} elements, connected {}", b.ground(), b.sets().len(), b.is_connected());
    let _ = writeln!(text, "nested set complex: {} vertices, dimension {}, flag {}", k.num_vertices(), k.dim(), b.is_flag());
    let _ = writeln!(text, "f-vector {f:?}");
    let mut j = json!({
        "building_set": b.to_json_value(),
        "connected": b.is_connected(),
        "f0": k.num_vertices(),
        "dim": k.dim(),
        "flag": b.is_flag(),
        "f_vector": f,
    });
    if emit {
        let _ = writeln!(text, "{}", k.to_json());
        j["complex"] = json!(k.to_json_value());
    }
    Ok(Output { json: j, text, ok: true })
}

fn element_json(reg: &Registry, e: &RingElement) -> Value {
    json!({ "text": reg.format(e), "element": reg.to_json(e) })
}

pub fn ring_boundary(source: &Source) -> Res {
    let reg = Registry::new();
    let (k, family) = load_complex(source)?;
    let e = match (family, source.n) {
        (Some(f), Some(n)) => reg.family_element(f, n)?,
        _ => RingElement::monomial(reg.intern(&k)?),
    };
    let d = reg.boundary(&e);
    let text = format!("P = {}\ndP = {}\n", reg.format(&e), reg.format(&d));
    Ok(Output { json: json!({ "polytope": element_json(&reg, &e), "boundary": element_json(&reg, &d) }), text, ok: true })
}

fn boundary_family(id: &str) -> Option<&str> {
    id.strip_suffix("-boundary")
}

pub fn ring_verify(id: &str, family: Option<&str>, n: Option<usize>, cfg: &Config) -> Res {
    if let Ok(identity) = id.parse::<Identity>() {
        return series_verify(Some(identity.id()), cfg);
    }
    let reg = Registry::new();
    let need_n = || n.ok_or_else(|| bad("--n is required"));
    let (ok, detail, j) = if let Some(f) = boundary_family(id) {
        let f = family_of(f)?;
        let n = need_n()?;
        let got = reg.boundary(&reg.family_element(f, n)?);
        let want = expected_boundary(&reg, f, n)?.ok_or_else(|| bad(format!("no closed boundary formula for {f}^{n}")))?;
        let ok = got == want;
        let detail = format!("d{f}^{n} = {}\nformula  {}", reg.format(&got), reg.format(&want));
        (ok, detail, json!({ "computed": element_json(&reg, &got), "formula": element_json(&reg, &want) }))
    } else if id == "links" {
        let f = family_of(family.ok_or_else(|| bad("--family is required"))?)?;
        let n = need_n()?;
        let e = reg.family_element(f, n)?;
        let got = reg.boundary(&e);
        let links = reg.boundary_by_links(&f.complex(n)?);
        let ok = got == links;
        let detail = format!("cached {}\nlinks  {}", reg.format(&got), reg.format(&links));
        (ok, detail, json!({ "cached": element_json(&reg, &got), "links": element_json(&reg, &links) }))
    } else if id == "dehn-sommerville" {
        let f = family_of(family.ok_or_else(|| bad("--family is required"))?)?;
        let n = need_n()?;
        let e = reg.family_element(f, n)?;
        let h = reg.h_polynomial(&e);
        let ok = h.is_symmetric();
        (ok, format!("H({f}^{n}) = {h}"), json!({ "h": h.to_string() }))
    } else {
        let mut known: Vec<String> =
            ["simplex", "pe", "st", "pgamma", "pmas"].iter().map(|f| format!("{f}-boundary")).collect();
        known.extend(["links".to_string(), "dehn-sommerville".to_string()]);
        known.extend(Identity::ALL.iter().map(|i| i.id().to_string()));
        return Err(bad(format!("unknown id `{id}`; known: {}", known.join(", "))));
    };
    let text = format!("{id}: {}\n{detail}\n", if ok { "pass" } else { "FAIL" });
    Ok(Output { json: json!({ "id": id, "pass": ok, "detail": j }), text, ok })
}

pub fn ring_closure(family: &str, dim: usize) -> Res {
    let f = family_of(family)?;
    let reg = Registry::new();
    let r = family_closure(&reg, f, dim)?;
    let mut text = String::new();
    let _ = writeln!(text, "closure of {f} up to dimension {dim}: {} classes", r.classes.len());
    for c in &r.classes {
        let _ = writeln!(text, "  {:<12} dim {} facets {:>3} {}", c.name, c.dim, c.facets, c.families.join(","));
    }
    let _ = writeln!(text, "cover {{{}}}, unclassified {}", r.cover.join(", "), r.unclassified.len());
    let _ = writeln!(text, "complexity {}", r.observed_complexity);
    Ok(Output { json: serde_json::to_value(&r).expect("serializable"), text, ok: true })
}

pub fn ring_gdfp(family: &str, n: usize) -> Res {
    let f = family_of(family)?;
    let r = gdfp_check(f, n)?;
    let mut text = String::new();
    for w in &r.witnesses {
        let _ = writeln!(text, "  {f}^{} in {f}^{}: {}", w.r, w.n, match &w.vertices {
            Some(v) => format!("{} on {}", w.method, v.join(" ")),
            None => "none".into(),
        });
    }
    for (a, b, ok) in &r.cube_facets {
        let _ = writeln!(text, "  cube facets of Q^{b} match Q^{a}: {ok}");
    }
    let _ = writeln!(text, "{}", if r.passed { "pass" } else { "FAIL" });
    Ok(Output { json: serde_json::to_value(&r).expect("serializable"), text, ok: r.passed })
}

pub fn series_verify(id: Option<&str>, cfg: &Config) -> Res {
    let ids: Vec<Identity> = match id {
        Some(s) => vec![s.parse()?],
        None => Identity::ALL.to_vec(),
    };
    let reg = Registry::new();
    let mut text = String::new();
    let mut reports = Vec::new();
    for i in ids {
        let r = toric_core::poly_ring::series::series_verify(&reg, i, cfg.series_order)?;
        let _ = write!(text, "{:<36} order {} {} ({} coefficients)", r.identity, r.order, if r.equal { "pass" } else { "FAIL" }, r.compared);
        if let Some(m) = &r.first_mismatch {
            let _ = write!(text, ", first mismatch at q^{} x^{}: {} vs {}", m.q, m.x, m.lhs, m.rhs);
        }
        text.push('\n');
        reports.push(r);
    }
    let ok = reports.iter().all(|r| r.equal);
    Ok(Output { json: serde_json::to_value(&reports).expect("serializable"), text, ok })
}

pub fn series_show(family: &str, cfg: &Config) -> Res {
    let f = family_of(family)?;
    let reg = Registry::new();
    let region = Region { total: cfg.series_order, q_max: 0, x_max: cfg.series_order };
    let s = series_build(&reg, f, region)?;
    let j = series_to_json(&reg, &s);
    let mut text = String::new();
    for (&(_, b), c) in s.coefficients() {
        let _ = writeln!(text, "x^{b}: {}", reg.format(c));
    }
    Ok(Output { json: j, text, ok: true })
}

pub fn series_list() -> Output {
    let ids: Vec<&str> = Identity::ALL.iter().map(|i| i.id()).collect();
    let text = ids.iter().map(|i| format!("{i}\n")).collect();
    Output { json: json!(ids), text, ok: true }
}
