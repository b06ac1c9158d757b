use pinball_core::springer_rep::{
    character, character_table, fixes_identity_class, gp_character, kk_matrix, kk_matrix_simple, kk_representation,
    RowStrictFilling,
};
use pinball_core::{KKMatrix, LieType, WeylGroup};
use proptest::prelude::*;

fn sym(n: usize) -> WeylGroup {
    WeylGroup::new(LieType::A, n - 1).unwrap()
}

#[test]
fn generators_satisfy_coxeter_relations() {
    for n in 3..=7 {
        let s: Vec<KKMatrix> = (1..n).map(|j| kk_matrix_simple(n, j)).collect();
        let id = KKMatrix::identity(n);
        for i in 0..n - 1 {
            assert_eq!(s[i].mul(&s[i]), id, "n={n} s{}^2", i + 1);
            for j in i + 1..n - 1 {
                let (a, b) = (&s[i], &s[j]);
                if j == i + 1 {
                    assert_eq!(a.mul(b).mul(a), b.mul(a).mul(b), "n={n} braid {i} {j}");
                } else {
                    assert_eq!(a.mul(b), b.mul(a), "n={n} commute {i} {j}");
                }
            }
        }
    }
}

#[test]
fn representation_is_multiplicative() {
    for n in 3..=5 {
        let g = sym(n);
        let rep = kk_representation(&g);
        for u in 0..g.order() {
            for v in 0..g.order() {
                assert_eq!(rep[g.mul(u, v)], rep[u].mul(&rep[v]), "n={n}");
            }
        }
    }
}

#[test]
fn identity_class_is_fixed_at_zero() {
    for n in 3..=5 {
        let g = sym(n);
        for w in 0..g.order() {
            assert!(fixes_identity_class(&kk_matrix(&g, w)));
        }
    }
}

#[test]
fn character_table_matches_the_combinatorial_model() {
    for n in 3..=6 {
        let g = sym(n);
        let table = character_table(&g);
        let partitions_of_n = [0, 1, 2, 3, 5, 7, 11][n];
        assert_eq!(table.len(), partitions_of_n);
        for row in table {
            assert!(row.matches(), "n={n} {:?}", row.cycle_type);
            assert_eq!(row.psi0, 1);
            assert_eq!(row.psi1, row.fixed_points as i64 - 1);
        }
    }
}

#[test]
fn filling_action_is_a_permutation_of_fillings() {
    let n = 5;
    let g = sym(n);
    for w in 0..g.order() {
        let one_line = g.element(w).one_line();
        let mut images: Vec<RowStrictFilling> =
            (1..=n).map(|b| RowStrictFilling::with_bottom(n, b).act(one_line)).collect();
        images.sort_by_key(|f| f.bottom);
        let expected: Vec<RowStrictFilling> = (1..=n).map(|b| RowStrictFilling::with_bottom(n, b)).collect();
        assert_eq!(images, expected);
    }
}

proptest! {
    #[test]
    fn characters_are_class_functions(n in 3usize..=5, u in any::<prop::sample::Index>(), w in any::<prop::sample::Index>()) {
        let g = sym(n);
        let (u, w) = (u.index(g.order()), w.index(g.order()));
        let conj = g.mul(g.mul(u, w), g.inverse(u));
        for piece in 0..2 {
            prop_assert_eq!(character(&g, w, piece), character(&g, conj, piece));
            let a = gp_character(g.element(w).one_line(), piece);
            let b = gp_character(g.element(conj).one_line(), piece);
            prop_assert_eq!(a, b);
            prop_assert_eq!(character(&g, w, piece), a);
        }
    }
}
