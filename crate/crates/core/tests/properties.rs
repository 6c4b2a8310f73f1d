//! Property-based suites: structural invariants that must hold for random
//! inputs, with seeded generators for reproducibility.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use e7check::chartab;
use e7check::linalg;
use e7check::lusztig;
use e7check::nilmodel::{self, ModelParams};
use e7check::poly;
use e7check::rootdata::{self, CartanType};
use e7check::weyl;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Elementary divisors are invariant under row and column permutation.
    #[test]
    fn snf_permutation_invariant(
        entries in proptest::collection::vec(-6i64..=6, 12),
        row_seed in 0u64..1000,
    ) {
        let m: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
        let base = linalg::smith_normal_form(&m);
        let mut rng = ChaCha8Rng::seed_from_u64(row_seed);
        let mut rows = m.clone();
        for i in (1..rows.len()).rev() {
            rows.swap(i, rng.gen_range(0..=i));
        }
        let permuted = linalg::smith_normal_form(&rows);
        prop_assert_eq!(base.divisors, permuted.divisors);
        prop_assert_eq!(base.rank, permuted.rank);
    }

    /// Cyclotomic polynomials multiply out to x^n - 1 over the divisors.
    #[test]
    fn cyclotomic_product(n in 1usize..40) {
        let mut prod = vec![1i128];
        for d in 1..=n {
            if n % d == 0 {
                prod = poly::mul(&prod, &poly::cyclotomic(d));
            }
        }
        prop_assert_eq!(prod, poly::xn_minus_one(n));
    }

    /// Bipartition value vectors from the combinatorial rule are characters:
    /// constant on the trivial cycle type with the hook-count degree.
    #[test]
    fn mn_degree_positive(la in 0u32..4, split in 0u32..3) {
        let lam: Vec<u32> = if la == 0 { vec![] } else { vec![la] };
        let mu_total = 6 - la - split.min(6 - la);
        let mut mu: Vec<u32> = Vec::new();
        if split.min(6 - la) > 0 { mu.push(split.min(6 - la)); }
        if mu_total > 0 { mu.push(mu_total); }
        mu.sort_unstable_by(|a, b| b.cmp(a));
        let total: u32 = lam.iter().chain(mu.iter()).sum();
        prop_assume!(total == 6);
        // identity = six 1-cycles of positive sign
        let deg = chartab::mn_bipartition_character(&lam, &mu, &[(1, 1); 6]);
        prop_assert!(deg > 0);
    }
}

/// Root systems are closed under their own reflections, and the pairing is
/// integral (checked exhaustively over the bundled types).
#[test]
fn root_system_closure() {
    for name in ["A2", "A3", "D6", "E7"] {
        let rs = rootdata::build_root_system(CartanType::builtin(name).unwrap()).unwrap();
        for alpha in &rs.positive_roots {
            for beta in &rs.positive_roots {
                let c = rs.pairing(&beta.coeffs, &alpha.coeffs);
                let reflected: Vec<i64> = beta
                    .coeffs
                    .iter()
                    .zip(&alpha.coeffs)
                    .map(|(&b, &a)| b - c * a)
                    .collect();
                assert!(
                    rs.signed_index_of(&reflected).is_some(),
                    "{name}: reflection left the root system"
                );
            }
        }
    }
}

/// Every Fourier matrix of the subsystem group is symmetric and involutive.
#[test]
fn fourier_involution_all_families() {
    let d6 = rootdata::build_root_system(CartanType::builtin("D6").unwrap()).unwrap();
    let d6_store = weyl::enumerate_group(&d6, weyl::DEFAULT_BUDGET).unwrap();
    let d6_classes = weyl::conjugacy_classes(&d6_store);
    let mut d6_table = chartab::char_table_dixon(&d6_store, &d6_classes, "D6").unwrap();
    chartab::attach_labels(&mut d6_table, &d6_store, &d6_classes).unwrap();
    let fams = lusztig::families(&d6_table).unwrap();
    assert!(!fams.is_empty());
    for fam in &fams {
        let m = lusztig::fourier_matrix(fam).unwrap();
        assert!(m.is_symmetric());
        assert!(m.is_involution());
    }
}

/// The model-group indicators do not depend on the free parameters c, eta.
#[test]
fn model_indicators_parameter_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in [1usize, 2] {
        for _ in 0..3 {
            let q = 25u16;
            let c: Vec<u16> = (0..k).map(|_| rng.gen_range(1..q)).collect();
            let eta: Vec<u16> = (0..k).map(|_| rng.gen_range(1..q)).collect();
            let report =
                nilmodel::run_suite(ModelParams::new(5, 2, k, c.clone(), eta.clone()).unwrap())
                    .unwrap();
            assert!(
                report.all_pass,
                "suite failed for k={k}, c={c:?}, eta={eta:?}: {:?}",
                report.checks
            );
            assert_eq!(report.fs_psi, 1);
            assert_eq!(report.fs_psi_prime, -1);
        }
    }
}
