use proptest::prelude::*;

use qhsa_core::datum::{HeckeDatum, Superdatum, Weight};
use qhsa_core::qhsa::{symbols, BasisSymbol, QhsaElement, Straightener};

fn super_datum() -> HeckeDatum {
    HeckeDatum::with_defaults(Superdatum::from_parts(&["i", "j"], &[1, 1], &[1, 1], &[&[2, -2], &[-2, -2]]))
}

fn mixed_datum() -> HeckeDatum {
    HeckeDatum::with_defaults(Superdatum::from_parts(
        &["a", "b", "c"],
        &[0, 0, 1],
        &[1, 1, 1],
        &[&[2, -1, 0], &[-1, 0, -2], &[0, -2, 2]],
    ))
}

/// Symbols of `1_{w_{k+1}} R 1_{w_k}` for the chosen words of one weight.
fn chain(seqs: &[Vec<usize>], picks: &[usize], sym: &[usize]) -> Vec<BasisSymbol> {
    (0..sym.len())
        .map(|k| {
            let (src, tgt) = (&seqs[picks[k] % seqs.len()], &seqs[picks[k + 1] % seqs.len()]);
            let all = symbols(tgt, src, 1);
            all[sym[k] % all.len()].clone()
        })
        .collect()
}

fn weight(h: &HeckeDatum, counts: &[u32]) -> Vec<Vec<usize>> {
    let mut w = Weight::zero(h.rank());
    w.0.copy_from_slice(counts);
    w.sequences()
}

fn associative(h: &HeckeDatum, counts: &[u32], picks: &[usize], sym: &[usize]) {
    let c = chain(&weight(h, counts), picks, sym);
    let [x, y, z] = [&c[2], &c[1], &c[0]].map(|s| QhsaElement::symbol(s.clone()));
    let mut st = Straightener::new(h);
    let xy = st.mult(&x, &y);
    let yz = st.mult(&y, &z);
    let left = st.mult(&xy, &z);
    let right = st.mult(&x, &yz);
    assert_eq!(left, right, "{:?} {:?} {:?}", c[2], c[1], c[0]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn super_mult_associates(picks in proptest::collection::vec(0usize..8, 4), sym in proptest::collection::vec(0usize..512, 3)) {
        associative(&super_datum(), &[2, 1], &picks, &sym);
    }

    #[test]
    fn mixed_mult_associates(picks in proptest::collection::vec(0usize..8, 4), sym in proptest::collection::vec(0usize..512, 3)) {
        associative(&mixed_datum(), &[1, 1, 1], &picks, &sym);
    }

    #[test]
    fn bidegree_adds(picks in proptest::collection::vec(0usize..8, 3), sym in proptest::collection::vec(0usize..512, 2)) {
        let h = super_datum();
        let c = chain(&weight(&h, &[2, 1]), &picks, &sym);
        let mut st = Straightener::new(&h);
        let prod = st.mult(&QhsaElement::symbol(c[1].clone()), &QhsaElement::symbol(c[0].clone()));
        let d = &h.datum;
        let (da, pa) = c[1].bidegree(d);
        let (db, pb) = c[0].bidegree(d);
        if !prod.is_zero() {
            prop_assert_eq!(prod.bidegree(d), Some((da + db, (pa + pb) % 2)));
        }
    }
}

#[test]
fn idempotents_are_units_on_their_blocks() {
    let h = super_datum();
    let mut st = Straightener::new(&h);
    for s in weight(&h, &[2, 1]) {
        let e = QhsaElement::symbol(BasisSymbol::idempotent(&s));
        for sym in symbols(&s, &s, 1) {
            let a = QhsaElement::symbol(sym);
            assert_eq!(st.mult(&e, &a), a);
            assert_eq!(st.mult(&a, &e), a);
        }
    }
}
