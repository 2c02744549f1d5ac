use extremal_spectra::io::{parse_adj, parse_pmm, write_adj, write_pmm};
use extremal_spectra::linalg::{kron, mat_pow, minpoly_zero_pm_check, signed_permute, trace, Graph, IntSymMatrix, PmOneMatrix};
use extremal_spectra::spectra::{default_tolerance, eigen_sym};
use proptest::prelude::*;

fn upper_to_sym(n: usize, vals: &[i64]) -> IntSymMatrix {
    let mut m = vec![0; n * n];
    let mut it = vals.iter();
    for i in 0..n {
        for j in i..n {
            let v = *it.next().unwrap();
            m[i * n + j] = v;
            m[j * n + i] = v;
        }
    }
    IntSymMatrix::from_vec(n, m).unwrap()
}

fn int_sym(max_n: usize) -> impl Strategy<Value = IntSymMatrix> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(-3i64..=3, n * (n + 1) / 2).prop_map(move |v| upper_to_sym(n, &v)))
}

fn pm_one(max_n: usize) -> impl Strategy<Value = PmOneMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, n * (n + 1) / 2)
            .prop_map(move |v| {
                let v: Vec<i64> = v.into_iter().map(|b| if b { 1 } else { -1 }).collect();
                PmOneMatrix::new(upper_to_sym(n, &v)).unwrap()
            })
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, n * (n + 1) / 2).prop_map(move |v| {
            let mut vals: Vec<i64> = v.into_iter().map(i64::from).collect();
            let mut idx = 0;
            for i in 0..n {
                vals[idx] = 0; // diagonal slot
                idx += n - i;
            }
            Graph::new(upper_to_sym(n, &vals)).unwrap()
        })
    })
}

fn signed_perm(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<i64>)> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(prop::bool::ANY, n))
        .prop_map(|(p, s)| (p, s.into_iter().map(|b| if b { 1 } else { -1 }).collect()))
}

proptest! {
    #[test]
    fn kron_trace_multiplies(a in int_sym(4), b in int_sym(4)) {
        let k = kron(&a, &b).unwrap();
        prop_assert_eq!(trace(&k).unwrap(), trace(&a).unwrap() * trace(&b).unwrap());
    }

    #[test]
    fn trace_of_square_is_entry_energy(a in int_sym(6)) {
        prop_assert_eq!(trace(&mat_pow(&a, 2).unwrap()).unwrap(), a.sum_of_squares().unwrap());
    }

    #[test]
    fn pm_one_trace_square_is_n_squared(b in pm_one(9)) {
        let n = b.order() as i64;
        prop_assert_eq!(trace(&mat_pow(b.as_sym(), 2).unwrap()).unwrap(), n * n);
    }

    #[test]
    fn signed_permutation_keeps_singular_values((b, sp) in pm_one(8).prop_flat_map(|b| { let n = b.order(); (Just(b), signed_perm(n)) })) {
        let c = signed_permute(&b, &sp.0, &sp.1).unwrap();
        let n = b.order();
        let x = eigen_sym(b.as_sym(), default_tolerance(n)).unwrap().singular_values();
        let y = eigen_sym(c.as_sym(), default_tolerance(n)).unwrap().singular_values();
        for (p, q) in x.iter().zip(&y) {
            prop_assert!((p - q).abs() < 1e-8);
        }
    }

    #[test]
    fn io_round_trip(b in pm_one(9), g in graph(9)) {
        let t = write_pmm(&b);
        prop_assert_eq!(&parse_pmm(&t).unwrap(), &b);
        prop_assert_eq!(write_pmm(&parse_pmm(&t).unwrap()), t);
        let t = write_adj(&g);
        prop_assert_eq!(&parse_adj(&t).unwrap(), &g);
        prop_assert_eq!(write_adj(&parse_adj(&t).unwrap()), t);
    }

    #[test]
    fn th1_and_complement_weyl(g in graph(10)) {
        let n = g.order();
        let s = eigen_sym(g.as_sym(), default_tolerance(n)).unwrap();
        let c = extremal_spectra::graphs::complement(&g);
        let sc = eigen_sym(c.as_sym(), default_tolerance(n)).unwrap();
        for k in 2..=n {
            let star = s.singular_value(k).unwrap();
            prop_assert!(s.lambda(k).unwrap() <= star + 1e-9);
            prop_assert!(star <= n as f64 / (2.0 * ((k - 1) as f64).sqrt()) + 1e-9);
            prop_assert!(s.lambda(k).unwrap() + sc.lambda(n - k + 2).unwrap() <= -1.0 + 1e-9);
        }
    }

    #[test]
    fn zeroing_diagonal_costs_at_most_one(g in graph(9), mask in any::<u16>()) {
        let n = g.order();
        let with = IntSymMatrix::from_fn(n, |i, j| if i == j { i64::from(mask >> i & 1 == 1) } else { g.as_sym().get(i, j) }).unwrap();
        let a = eigen_sym(g.as_sym(), default_tolerance(n)).unwrap();
        let b = eigen_sym(&with, default_tolerance(n)).unwrap();
        for k in 1..=n {
            prop_assert!(a.lambda(k).unwrap() >= b.lambda(k).unwrap() - 1.0 - 1e-9);
        }
    }

    #[test]
    fn spectrum_traces(a in int_sym(7)) {
        let n = a.order();
        let s = eigen_sym(&a, default_tolerance(n)).unwrap();
        let t1: f64 = s.values().iter().sum();
        let t2: f64 = s.values().iter().map(|x| x * x).sum();
        prop_assert!((t1 - trace(&a).unwrap() as f64).abs() < 1e-8);
        prop_assert!((t2 - a.sum_of_squares().unwrap() as f64).abs() < 1e-7);
    }

    /// `den·B³ = num·B` plus `tr B² = k·num/den` pins the nonzero count to `k`.
    #[test]
    fn minpoly_check_counts_nonzero(b in pm_one(6)) {
        let n = b.order() as i64;
        let s = eigen_sym(b.as_sym(), default_tolerance(b.order())).unwrap();
        for k in 1..=b.order() as i64 {
            if minpoly_zero_pm_check(b.as_sym(), n * n, k).unwrap() {
                // tr B² = n² = k·(n²/k) always holds for ±1 matrices
                let nonzero = s.values().iter().filter(|x| x.abs() > 1e-6).count() as i64;
                prop_assert_eq!(nonzero, k);
            }
        }
    }
}

#[test]
fn minpoly_on_known_members() {
    let h = PmOneMatrix::h2();
    assert!(minpoly_zero_pm_check(h.as_sym(), 4, 2).unwrap());
    assert!(!minpoly_zero_pm_check(h.as_sym(), 4, 1).unwrap());
    let j = PmOneMatrix::ones(3);
    assert!(minpoly_zero_pm_check(j.as_sym(), 9, 1).unwrap());
}
