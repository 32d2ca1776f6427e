use expcone_core::cone::{Cone, Mode};
use expcone_core::linalg;
use expcone_core::rational::{self, int, qvec, QVec, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Membership in the closed cone over `gens` by Carathéodory: some
/// independent subset of generators carries `v` with nonnegative weights.
fn in_cone_oracle(gens: &[QVec], v: &[Rational]) -> bool {
    let d = v.len();
    if rational::is_zero_vec(v) {
        return true;
    }
    let n = gens.len();
    for mask in 1u32..(1 << n) {
        let subset: Vec<QVec> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| gens[i].clone())
            .collect();
        if subset.len() > d || linalg::rank(&subset, d) != subset.len() {
            continue;
        }
        if let Some(c) = linalg::coordinates_in(&subset, v) {
            if c.iter().all(|x| !x.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn random_vec(rng: &mut ChaCha8Rng, d: usize, r: i64) -> QVec {
    (0..d).map(|_| int(rng.random_range(-r..=r))).collect()
}

fn random_cone_gens(rng: &mut ChaCha8Rng, d: usize) -> Vec<QVec> {
    let n = rng.random_range(d..=d + 3);
    loop {
        let g: Vec<QVec> = (0..n).map(|_| random_vec(rng, d, 3)).collect();
        if g.iter().any(|x| !rational::is_zero_vec(x)) {
            return g;
        }
    }
}

#[test]
fn closed_membership_matches_caratheodory_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    let mut checked = 0;
    let mut inside = 0;
    for round in 0..40 {
        let d = 2 + round % 4;
        let gens = random_cone_gens(&mut rng, d);
        let cone = Cone::from_generators(&gens).unwrap();
        for k in 0..30 {
            let v = if k % 3 == 0 {
                // positive combination, guaranteed inside
                let mut v = vec![Rational::zero(); d];
                for g in &gens {
                    let t = int(rng.random_range(0..4));
                    v = rational::add(&v, &rational::scale(&t, g));
                }
                v
            } else {
                random_vec(&mut rng, d, 6)
            };
            let got = cone.member(&v, Mode::Closed).unwrap();
            assert_eq!(got, in_cone_oracle(&gens, &v), "gens {gens:?} v {v:?}");
            checked += 1;
            inside += got as usize;
        }
    }
    assert!(checked >= 1000);
    assert!(inside > 100 && inside < checked);
}

#[test]
fn generators_satisfy_facets_and_facets_are_irredundant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..60 {
        let d = 2 + round % 5;
        let gens = random_cone_gens(&mut rng, d);
        let cone = Cone::from_generators(&gens).unwrap();
        for g in cone.generators() {
            for f in cone.facets() {
                assert!(!rational::dot(f, g).is_negative());
            }
        }
        if !cone.is_pointed() || cone.facets().is_empty() {
            continue;
        }
        // interior point of the cone
        let u = cone
            .generators()
            .iter()
            .fold(vec![Rational::zero(); d], |acc, g| rational::add(&acc, g));
        for (i, fi) in cone.facets().iter().enumerate() {
            let on: Vec<&QVec> = cone
                .generators()
                .iter()
                .filter(|g| rational::dot(fi, g).is_zero())
                .collect();
            assert_eq!(
                linalg::rank(&on.iter().map(|g| (*g).clone()).collect::<Vec<_>>(), d),
                cone.span_dim() - 1
            );
            let c = on
                .iter()
                .fold(vec![Rational::zero(); d], |acc, g| rational::add(&acc, g));
            let mut delta: Option<Rational> = None;
            for (j, fj) in cone.facets().iter().enumerate() {
                if j != i {
                    let r = rational::dot(fj, &c) / rational::dot(fj, &u);
                    assert!(r.is_positive());
                    if delta.as_ref().is_none_or(|x| r < *x) {
                        delta = Some(r);
                    }
                }
            }
            let delta = delta.unwrap_or_else(|| int(1)) / int(2);
            let witness = rational::sub(&c, &rational::scale(&delta, &u));
            assert!(rational::dot(fi, &witness).is_negative());
            for (j, fj) in cone.facets().iter().enumerate() {
                if j != i {
                    assert!(rational::dot(fj, &witness).is_positive());
                }
            }
        }
    }
}

#[test]
fn boundary_distance_matches_mesh_search() {
    // sl3 cone over s_{e1-e2}, s_{e1-e3}; gram = 6 Id
    let g1 = qvec(&[1, -1, 0]);
    let g2 = qvec(&[1, 0, -1]);
    let cone = Cone::from_generators(&[g1.clone(), g2.clone()]).unwrap();
    let gram: Vec<QVec> = (0..3)
        .map(|i| (0..3).map(|j| int(if i == j { 6 } else { 0 })).collect())
        .collect();
    let v = [2.0, -1.0, -1.0];
    let got = cone
        .boundary_distance(&qvec(&[2, -1, -1]), &gram)
        .unwrap()
        .distance;
    let mut best = f64::INFINITY;
    for g in [[1.0, -1.0, 0.0], [1.0, 0.0, -1.0]] {
        for k in 0..=400_000 {
            let t = k as f64 * 1e-5;
            let d2: f64 = (0..3).map(|i| (v[i] - t * g[i]).powi(2)).sum::<f64>() * 6.0;
            best = best.min(d2.sqrt());
        }
    }
    assert!((got - best).abs() < 1e-6, "got {got}, mesh {best}");
}

#[test]
fn example_facet_counts() {
    // {diag(r, -t)} in the trace-zero space of gl_{m+n}
    for ((m, n), want) in [((1, 1), 1), ((1, 2), 2), ((2, 1), 2), ((2, 2), 4)] {
        let mut gens = Vec::new();
        for i in 0..m {
            for j in 0..n {
                let mut v = vec![0i64; m + n];
                v[i] = 1;
                v[m + j] = -1;
                gens.push(qvec(&v));
            }
        }
        let cone = Cone::from_generators(&gens).unwrap();
        assert_eq!(cone.facets().len(), want, "(m,n)=({m},{n})");
    }
}

fn small_gens() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4)
        .prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-3i64..=3, d), d..=d + 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn double_duality(gens in small_gens()) {
        let gens: Vec<QVec> = gens.iter().map(|g| qvec(g)).collect();
        prop_assume!(gens.iter().any(|g| !rational::is_zero_vec(g)));
        let c = Cone::from_generators(&gens).unwrap();
        let again = Cone::from_generators(c.generators()).unwrap();
        prop_assert!(again.same_cone(&c));
        let from_h = Cone::from_inequalities(c.facets(), c.equations(), c.ambient_dim()).unwrap();
        prop_assert!(from_h.same_cone(&c));
    }

    #[test]
    fn boundary_distance_is_homogeneous(gens in small_gens(), lambda in 1i64..20) {
        let gens: Vec<QVec> = gens.iter().map(|g| qvec(g)).collect();
        prop_assume!(gens.iter().any(|g| !rational::is_zero_vec(g)));
        let c = Cone::from_generators(&gens).unwrap();
        prop_assume!(c.is_pointed() && !c.facets().is_empty());
        let d = c.ambient_dim();
        let v = c.generators().iter().fold(vec![Rational::zero(); d], |a, g| rational::add(&a, g));
        let id = linalg::identity(d);
        let r1 = c.boundary_distance(&v, &id).unwrap();
        let lv = rational::scale(&int(lambda), &v);
        let r2 = c.boundary_distance(&lv, &id).unwrap();
        prop_assert_eq!(r2.distance_sq, int(lambda * lambda) * r1.distance_sq);
    }

    #[test]
    fn open_member_implies_closed_member(gens in small_gens(), v in prop::collection::vec(-5i64..=5, 4)) {
        let gens: Vec<QVec> = gens.iter().map(|g| qvec(g)).collect();
        prop_assume!(gens.iter().any(|g| !rational::is_zero_vec(g)));
        let c = Cone::from_generators(&gens).unwrap();
        let v = qvec(&v[..c.ambient_dim()]);
        if c.member(&v, Mode::Open).unwrap() {
            prop_assert!(c.member(&v, Mode::Closed).unwrap());
        }
    }
}
