use divgroup::element::{elem_add, elem_smul, parse_element};
use divgroup::independence::{
    is_independent_rational, is_independent_torsion, max_independent_subset,
};
use divgroup::{parse, GroupElement, Limits};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// Rank over F_p of the nonzero vectors in `vs`, by elimination mod p.
fn rank_mod_p(vs: &[(u64, u64)], p: u64) -> usize {
    let mut rows: Vec<[u64; 2]> = vs.iter().map(|&(a, b)| [a, b]).collect();
    let mut rank = 0;
    for col in 0..2 {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = (1..p).find(|&k| rows[rank][col] * k % p == 1).unwrap();
        let pivot_row = rows[rank].map(|v| v * inv % p);
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank {
                let f = row[col];
                for c in 0..2 {
                    row[c] = (row[c] + p * p - f * pivot_row[c] % p) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

fn subsets_up_to_3<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let n = items.len();
    let mut out = vec![vec![]];
    for i in 0..n {
        out.push(vec![items[i].clone()]);
        for j in i + 1..n {
            out.push(vec![items[i].clone(), items[j].clone()]);
            for k in j + 1..n {
                out.push(vec![items[i].clone(), items[j].clone(), items[k].clone()]);
            }
        }
    }
    out
}

#[test]
fn torsion_verdicts_match_field_rank() {
    let l = Limits::default();
    for p in [2u64, 3, 5] {
        let parent = parse(&format!("Z/{p}^2")).unwrap();
        let pairs: Vec<(u64, u64)> = (0..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
        for subset in subsets_up_to_3(&pairs) {
            let xs: Vec<GroupElement> = subset
                .iter()
                .map(|(a, b)| {
                    let text = format!("{{pos0.tag0=cyc:{p}:{a}, pos0.tag1=cyc:{p}:{b}}}");
                    parse_element(&text, Some(&parent), &l).unwrap()
                })
                .collect();
            let verdict = is_independent_torsion(&xs, &l).unwrap();
            // zero elements never take part in a nontrivial relation
            let nonzero: Vec<(u64, u64)> =
                subset.iter().copied().filter(|&v| v != (0, 0)).collect();
            let expected = rank_mod_p(&nonzero, p) == nonzero.len();
            assert_eq!(verdict.independent, expected, "p = {p}, {subset:?}");
            if let Some(cert) = verdict.certificate {
                let terms: Vec<GroupElement> =
                    xs.iter().zip(&cert).map(|(x, c)| elem_smul(c, x)).collect();
                assert!(terms.iter().any(|t| !t.is_identity()));
                let total = terms
                    .iter()
                    .try_fold(parse_element("{}", Some(&parent), &l).unwrap(), |acc, t| {
                        elem_add(&acc, t)
                    })
                    .unwrap();
                assert!(total.is_identity());
            }
        }
    }
}

fn to_rat(vs: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    vs.iter()
        .map(|v| {
            v.iter()
                .map(|&a| BigRational::from_integer(a.into()))
                .collect()
        })
        .collect()
}

fn check_maximal(vs: &[Vec<i64>]) {
    let rat = to_rat(vs);
    let kept = max_independent_subset(&rat).unwrap();
    let chosen: Vec<Vec<BigRational>> = kept.iter().map(|&i| rat[i].clone()).collect();
    assert!(
        is_independent_rational(&chosen).unwrap().independent,
        "{vs:?}"
    );
    for i in (0..vs.len()).filter(|i| !kept.contains(i)) {
        let mut extended = chosen.clone();
        extended.push(rat[i].clone());
        assert!(
            !is_independent_rational(&extended).unwrap().independent,
            "{vs:?} + {i}"
        );
    }
}

#[test]
fn greedy_subset_is_maximal_on_all_small_binary_lists() {
    let cube: Vec<Vec<i64>> = (0..16)
        .map(|m| (0..4).map(|b| (m >> b) & 1).collect())
        .collect();
    let mut lists: Vec<Vec<Vec<i64>>> = vec![vec![]];
    for _ in 0..3 {
        let next: Vec<Vec<Vec<i64>>> = lists
            .iter()
            .filter(|l| l.len() == lists.last().unwrap().len())
            .flat_map(|l| {
                cube.iter().map(move |v| {
                    let mut l = l.clone();
                    l.push(v.clone());
                    l
                })
            })
            .collect();
        lists.extend(next);
    }
    assert_eq!(lists.len(), 1 + 16 + 256 + 4096);
    for l in &lists {
        check_maximal(l);
    }
}

fn arb_vectors() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, 4), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn greedy_subset_is_maximal(vs in arb_vectors()) {
        check_maximal(&vs);
    }

    #[test]
    fn greedy_subset_size_ignores_order(vs in arb_vectors(), perm in Just(()).prop_perturb(|_, mut rng| {
        let mut order: Vec<usize> = (0..5).collect();
        for i in (1..5).rev() {
            order.swap(i, (rng.next_u32() as usize) % (i + 1));
        }
        order
    })) {
        let permuted: Vec<Vec<i64>> = perm.iter().filter(|&&i| i < vs.len()).map(|&i| vs[i].clone()).collect();
        let a = max_independent_subset(&to_rat(&vs)).unwrap().len();
        let b = max_independent_subset(&to_rat(&permuted)).unwrap().len();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rational_certificate_is_a_relation(vs in arb_vectors()) {
        let rat = to_rat(&vs);
        if let Some(cert) = is_independent_rational(&rat).unwrap().certificate {
            prop_assert!(cert.iter().any(|c| *c != BigInt::from(0)));
            for col in 0..4 {
                let s: BigRational = rat.iter().zip(&cert).map(|(v, c)| &v[col] * c).sum();
                prop_assert_eq!(s, BigRational::from_integer(0.into()));
            }
        }
    }
}
