use pfaffcubic::lattice::{
    enumerate_minus_one_classes, enumerate_roots, find_disjoint_e, pair, quintic_class,
    LatticeClass, RootConfig, K,
};

/// Every ordered configuration of r <= 3 pairwise orthogonal roots.
fn orthogonal_configs() -> Vec<Vec<LatticeClass>> {
    let roots = enumerate_roots();
    let mut out = Vec::new();
    for &a in &roots {
        out.push(vec![a]);
        for &b in &roots {
            if pair(a, b) != 0 || a == b || a == b.scale(-1) {
                continue;
            }
            out.push(vec![a, b]);
            for &c in &roots {
                if pair(a, c) == 0 && pair(b, c) == 0 && c != a.scale(-1) && c != b.scale(-1) && c != a && c != b {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

#[test]
fn every_orthogonal_configuration_has_a_disjoint_line() {
    let configs = orthogonal_configs();
    assert!(configs.iter().any(|c| c.len() == 3));
    for roots in configs {
        let cfg = RootConfig::new(roots.clone()).unwrap();
        assert_eq!(cfg.dynkin_type(), format!("{}A1", roots.len()).trim_start_matches('1'));
        let e = find_disjoint_e(&cfg).unwrap();
        assert_eq!((e.square(), pair(e, K)), (-1, -1));
        assert_eq!(pair(e, roots[0]), 1);
        let d = quintic_class(roots[0], e).unwrap();
        assert_eq!(d.square(), 5);
        assert_eq!(pair(d, K.scale(-1)), 5);
        for &r in &roots[1..] {
            assert_eq!(pair(e, r), 0);
            assert_eq!(pair(d, r), 0);
        }
    }
}

#[test]
fn enumeration_is_lexicographic_and_bounded() {
    for list in [enumerate_minus_one_classes(), enumerate_roots()] {
        assert!(list.windows(2).all(|w| w[0] < w[1]));
        assert!(list.iter().all(|c| c.0[0].abs() <= 6 && c.0[1..].iter().all(|m| m.abs() <= 3)));
    }
    assert_eq!(enumerate_roots().iter().filter(|r| r.0 > [0; 7]).count(), 36);
}
