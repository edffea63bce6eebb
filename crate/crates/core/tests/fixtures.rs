use crosscut::arrangement::{braid, Chamber};
use crosscut::catalog::{self, named, CatalogObject};
use crosscut::congruence::{all_congruences, congruence_lattice, Congruence};
use crosscut::doubling::{double, DoublingCase};
use crosscut::json::{parse_lattice, poset_to_string};
use crosscut::Error;

#[test]
fn fixture_sizes() {
    assert_eq!(catalog::boolean(3).len(), 8);
    assert_eq!(catalog::chain(4).cover_count(), 3);
    assert_eq!(catalog::weak_order(3).len(), 6);
    assert_eq!(catalog::weak_order(4).cover_count(), 36);
    assert_eq!(catalog::tamari(3).len(), 5);
    assert_eq!(catalog::tamari(4).len(), 14);
    assert!(catalog::tamari(3).is_isomorphic(&catalog::n5()));
    assert!(catalog::weak_order(3).is_isomorphic(&catalog::hexagon()));
}

#[test]
fn textbook_properties() {
    assert!(catalog::boolean(3).is_distributive());
    assert!(!catalog::n5().is_distributive());
    assert!(catalog::n5().is_semidistributive());
    assert!(!catalog::m3().is_meet_semidistributive());
    assert!(catalog::weak_order(4).is_semidistributive());
    assert!(catalog::tamari(4).is_semidistributive());
    let m3 = catalog::m3();
    assert_eq!(m3.mobius(m3.bottom(), m3.top()).unwrap(), 2);
}

#[test]
fn catalog_lookup() {
    assert!(matches!(named("boolean", Some(2)).unwrap(), CatalogObject::Lattice(l) if l.len() == 4));
    assert!(matches!(named("prism4", None).unwrap(), CatalogObject::Arrangement(a) if a.len() == 4));
    assert!(matches!(named("nonsense", None), Err(Error::UnknownName { .. })));
    assert!(named("weak_order", Some(40)).is_err());
}

#[test]
fn json_round_trip() {
    for (_, l) in catalog::fixture_lattices() {
        let text = poset_to_string(&l);
        let back = parse_lattice(&text).unwrap();
        let mut names = l.names().to_vec();
        names.sort();
        assert_eq!(back.names(), names.as_slice());
        assert!(back.is_isomorphic(&l));
        assert_eq!(poset_to_string(&back), text);
    }
    assert!(parse_lattice(r#"{"elements":["a","b"],"covers":[]}"#).is_err());
    assert!(parse_lattice("not json").is_err());
}

#[test]
fn congruence_lattices_of_small_fixtures() {
    let (con_n5, _) = congruence_lattice(&catalog::n5()).unwrap();
    assert_eq!(con_n5.len(), 5);
    assert!(con_n5.is_distributive());
    assert_eq!(all_congruences(&catalog::m3()).len(), 2);
    assert_eq!(all_congruences(&catalog::chain(4)).len(), 8);
    let hex = catalog::hexagon();
    let theta = Congruence::principal(&hex, hex.index_of("a").unwrap(), hex.index_of("A").unwrap());
    let (q, _) = theta.quotient(&hex).unwrap();
    assert!(q.is_isomorphic(&catalog::n5()));
}

#[test]
fn doubling_basics() {
    let c2 = catalog::chain(2);
    let d = double(&c2, &[1]).unwrap();
    assert!(d.lattice().is_isomorphic(&catalog::chain(3)));
    let lo = d.element(0, 0).unwrap();
    let hi = d.element(1, 1).unwrap();
    let (case, _) = d.classify_interval(lo, hi).unwrap();
    assert_eq!(case, DoublingCase::Simplex);
    let n5 = catalog::n5();
    let (a, c) = (n5.index_of("a").unwrap(), n5.index_of("c").unwrap());
    assert!(double(&n5, &[a, c]).is_ok());
    let b2 = catalog::boolean(2);
    assert!(double(&b2, &[b2.bottom(), b2.top()]).is_err());
}

#[test]
fn braid_chambers() {
    for n in 2..=4 {
        let cs = braid(n).unwrap().chambers().unwrap();
        assert_eq!(cs.len(), (1..=n).product::<usize>());
        assert!(cs.all_simplicial());
    }
    let prism = catalog::prism4().chambers().unwrap();
    assert_eq!(prism.len(), 14);
    let base = prism.index_of(&"++++".parse::<Chamber>().unwrap()).unwrap();
    assert!(!prism.is_bineighborly(base));
    assert!(catalog::three_lines().chambers().unwrap().len() == 6);
}
