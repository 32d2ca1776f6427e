//! The exact verbs. Every value in the documents built here is a string,
//! boolean or integer; no floating-point number is emitted.

use crate::args::SystemArgs;
use crate::error::CliError;
use expcone_core::cone::{Cone, Mode};
use expcone_core::rational::{format_qvec, format_rational, parse_rational, parse_rational_list};
use expcone_core::{
    drift_distance, expanding_cone, floor, floor_prime, horospherical_roots, hplus_contained_in_u,
    restricted_cone_check, CartanVector, DiagramAutomorphism, ExpandingCone, Family, FloorPrime,
    ParabolicData, QVec, RootSystem,
};
use serde_json::{json, Map, Value};

pub struct Setup {
    pub system: RootSystem,
    pub parabolic: ParabolicData,
    pub removed: Vec<usize>,
}

fn parse_indices(field: &str, s: &str, rank: usize) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part.parse().map_err(|_| {
            CliError::field(field, format!("expected 1-based indices, got {part:?}"))
        })?;
        if i == 0 || i > rank {
            return Err(CliError::field(
                field,
                format!("index {i} outside 1..={rank}"),
            ));
        }
        out.push(i - 1);
    }
    Ok(out)
}

pub fn parse_vector(field: &str, s: &str) -> Result<QVec, CliError> {
    parse_rational_list(s).map_err(|e| CliError::field(field, e))
}

pub fn setup(args: &SystemArgs) -> Result<Setup, CliError> {
    let family: Family = args.family.parse()?;
    let system = match &args.kappa {
        Some(k) => {
            let kappa = parse_rational(k).map_err(|e| CliError::field("--kappa", e))?;
            RootSystem::build_with_kappa(family, args.rank, kappa)?
        }
        None => RootSystem::build(family, args.rank)?,
    };
    let removed = match &args.parabolic {
        Some(p) => parse_indices("--parabolic", p, system.rank())?,
        None => (0..system.rank()).collect(),
    };
    let parabolic = ParabolicData::complement_of(&system, &removed)?;
    Ok(Setup {
        system,
        parabolic,
        removed,
    })
}

fn one_based(xs: &[usize]) -> Value {
    json!(xs.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn rows(xs: &[QVec]) -> Value {
    json!(xs.iter().map(|v| format_qvec(v)).collect::<Vec<_>>())
}

fn header(verb: &str, st: &Setup) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("version".into(), json!(1));
    m.insert("verb".into(), json!(verb));
    m.insert("system".into(), json!(st.system.label()));
    m.insert(
        "kappa".into(),
        json!(st
            .system
            .factors()
            .iter()
            .map(|f| format_rational(&f.kappa))
            .collect::<Vec<_>>()),
    );
    let mut removed = st.removed.clone();
    removed.sort_unstable();
    removed.dedup();
    m.insert("removed".into(), one_based(&removed));
    m.insert("levi".into(), one_based(st.parabolic.levi()));
    m
}

fn cone_fields(c: &Cone) -> Value {
    json!({
        "generators": rows(c.generators()),
        "facets": rows(c.facets()),
        "equations": rows(c.equations()),
    })
}

fn build_cone(st: &Setup) -> Result<ExpandingCone, CliError> {
    Ok(expanding_cone(&st.system, &st.parabolic)?)
}

pub fn cone(args: &SystemArgs) -> Result<Value, CliError> {
    let st = setup(args)?;
    let ec = build_cone(&st)?;
    let mut m = header("cone", &st);
    m.insert(
        "roots".into(),
        rows(&ec.roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>()),
    );
    m.insert(
        "coroots".into(),
        rows(&ec.coroots.iter().map(|r| r.0.clone()).collect::<Vec<_>>()),
    );
    m.insert("generators".into(), rows(ec.cone.generators()));
    m.insert("facets".into(), rows(ec.cone.facets()));
    m.insert("facet_weights".into(), rows(&ec.facet_weights));
    m.insert("equations".into(), rows(ec.cone.equations()));
    Ok(Value::Object(m))
}

pub fn member(args: &SystemArgs, s: &str, mode: &str) -> Result<Value, CliError> {
    let mode: Mode = mode
        .parse()
        .map_err(|e: String| CliError::field("--mode", e))?;
    let sv = parse_vector("--s", s)?;
    let st = setup(args)?;
    let ec = build_cone(&st)?;
    st.system.check_cartan(&sv)?;
    let inside = ec.cone.member(&sv, mode)?;
    let mut m = header("member", &st);
    m.insert("s".into(), json!(format_qvec(&sv)));
    m.insert(
        "mode".into(),
        json!(if mode == Mode::Open { "open" } else { "closed" }),
    );
    m.insert("member".into(), json!(inside));
    Ok(Value::Object(m))
}

pub fn floor_cmd(args: &SystemArgs, s: &str, w: &str) -> Result<Value, CliError> {
    let sv = CartanVector(parse_vector("--s", s)?);
    let wv = CartanVector(parse_vector("--w", w)?);
    let st = setup(args)?;
    let ec = build_cone(&st)?;
    st.system.check_cartan(&sv.0)?;
    st.system.check_cartan(&wv.0)?;
    let fd = horospherical_roots(&st.system, &wv)?;
    let fl = floor(&ec, &fd, &sv)?;
    let fp = floor_prime(&ec, &fd, &sv)?;
    let mut m = header("floor", &st);
    m.insert("s".into(), json!(format_qvec(&sv.0)));
    m.insert("w".into(), json!(format_qvec(&wv.0)));
    m.insert(
        "expanded_roots".into(),
        rows(
            &fd.expanded_roots
                .iter()
                .map(|r| r.0.clone())
                .collect::<Vec<_>>(),
        ),
    );
    m.insert(
        "hplus_in_radical".into(),
        json!(hplus_contained_in_u(&ec, &fd)),
    );
    m.insert("floor".into(), json!(format_rational(&fl)));
    m.insert(
        "floor_prime".into(),
        json!(match fp {
            FloorPrime::Finite(q) => format_rational(&q),
            FloorPrime::Unbounded => "unbounded".to_string(),
        }),
    );
    Ok(Value::Object(m))
}

pub fn drift(args: &SystemArgs, s: &str) -> Result<Value, CliError> {
    let sv = CartanVector(parse_vector("--s", s)?);
    let st = setup(args)?;
    let ec = build_cone(&st)?;
    let rep = drift_distance(&ec, &sv)?;
    let mut m = header("drift", &st);
    m.insert("s".into(), json!(format_qvec(&sv.0)));
    m.insert("interior".into(), json!(rep.interior));
    m.insert(
        "distance_squared".into(),
        json!(format_rational(&rep.distance_squared)),
    );
    m.insert(
        "min_facet_value".into(),
        json!(format_rational(&rep.min_facet_value)),
    );
    m.insert("argmin_facet".into(), json!(rep.argmin_facet));
    m.insert(
        "argmin_facet_weight".into(),
        json!(format_qvec(&ec.facet_weights[rep.argmin_facet])),
    );
    Ok(Value::Object(m))
}

pub fn restrict(args: &SystemArgs, automorphism: &str) -> Result<Value, CliError> {
    let st = setup(args)?;
    let perm = parse_indices("--automorphism", automorphism, st.system.rank())?;
    let sigma = DiagramAutomorphism::new(&st.system, &perm)?;
    let check = restricted_cone_check(&st.system, st.parabolic.levi(), &sigma)?;
    let mut m = header("restrict", &st);
    m.insert("automorphism".into(), one_based(sigma.perm()));
    m.insert("equal".into(), json!(check.equal));
    m.insert("subspace_basis".into(), rows(&check.subspace_basis));
    m.insert("lhs".into(), cone_fields(&check.lhs));
    m.insert("rhs".into(), cone_fields(&check.rhs));
    Ok(Value::Object(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(family: &str, rank: usize, parabolic: Option<&str>) -> SystemArgs {
        SystemArgs {
            family: family.into(),
            rank,
            kappa: None,
            parabolic: parabolic.map(String::from),
        }
    }

    #[test]
    fn indices_are_one_based() {
        assert_eq!(parse_indices("x", "1, 3", 3).unwrap(), vec![0, 2]);
        assert!(parse_indices("x", "0", 3).is_err());
        assert!(parse_indices("x", "4", 3).is_err());
        assert!(parse_indices("x", "a", 3).is_err());
    }

    #[test]
    fn floor_example() {
        let v = floor_cmd(&sys("A", 2, Some("1")), "3,-1,-2", "2,-1,-1").unwrap();
        assert_eq!(v["floor"], "1");
        assert_eq!(v["floor_prime"], "1");
    }

    #[test]
    fn sl3_cone_with_second_root_removed() {
        let v = cone(&sys("A", 2, Some("2"))).unwrap();
        assert_eq!(v["levi"], json!([1]));
        assert_eq!(v["facets"], json!([["-1", "2", "-1"], ["2", "-1", "-1"]]));
    }

    #[test]
    fn malformed_rational_names_the_field() {
        let e = member(&sys("A", 1, None), "1/0,1", "open").unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().starts_with("--s: malformed rational"), "{e}");
    }

    #[test]
    fn improper_parabolic_is_a_domain_error() {
        let e = cone(&sys("A", 2, Some(""))).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("parabolic not absolutely proper"));
    }
}
