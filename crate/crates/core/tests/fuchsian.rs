use proptest::prelude::*;
use smalleig::fuchsian::*;
use smalleig::Error;

fn length_of(m: &Mobius) -> f64 {
    match classify_trace(m.trace()) {
        Isometry::Hyperbolic { length } => length,
        other => panic!("not hyperbolic: {other:?}"),
    }
}

fn reduced_words(max_len: usize) -> Vec<Vec<Letter>> {
    let mut all = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..4u8 {
                if w.last().is_some_and(|&p| p == (l ^ 2)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

#[test]
fn generator_round_trip() {
    for i in 0..=200 {
        let l = 0.01 * (2000f64).powf(i as f64 / 200.0);
        let m = hyperbolic_generator(l).unwrap();
        let got = length_of(&m);
        assert!((got - l).abs() <= 1e-12 * l.max(1.0), "{l}: {got}");
    }
    for l in [0.5, 1.0, 5.0] {
        assert!((length_of(&hyperbolic_generator(l).unwrap()) - l).abs() < 1e-14);
    }
}

#[test]
fn thrice_punctured_sphere_has_no_elliptics_to_length_8() {
    let g = pants_group(0.0, 0.0, 0.0).unwrap();
    assert_eq!(g.b.c, -4.0);
    for m in [g.a, g.b, g.a * g.b] {
        assert!((m.trace().abs() - 2.0).abs() < 1e-15);
    }
    let gens = [g.a, g.b, g.a.inverse(), g.b.inverse()];
    for w in reduced_words(8) {
        let m = w.iter().fold(Mobius::IDENTITY, |acc, &l| acc * gens[l as usize]);
        // integer matrices: exact
        assert!(m.trace().abs() >= 2.0, "{w:?}");
        assert!(!m.is_sign_identity(0.5), "{w:?}");
    }
}

#[test]
fn third_boundary_parameter_matches_root_solve() {
    // solve tr(AB) = -2cosh(1/2) for the lower-left entry by bisection
    let target = -2.0 * 0.5f64.cosh();
    let tr = |t: f64| {
        let a = Mobius::new(1.0, 1.0, 0.0, 1.0);
        let b = Mobius::new(1.0, 0.0, t, 1.0);
        (a * b).trace()
    };
    let (mut lo, mut hi) = (-10.0, 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if tr(mid) > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let g = pants_group(0.0, 0.0, 1.0).unwrap();
    assert!((g.b.c - 0.5 * (lo + hi)).abs() < 1e-13);
    assert!(((g.a * g.b).trace().abs() - 2.0 * 0.5f64.cosh()).abs() < 1e-13);
}

#[test]
fn single_letters_pair_with_their_inverses() {
    let g = pants_group(1.0, 1.0, 0.0).unwrap();
    let classes = enumerate_classes(&g, 1).unwrap();
    let words: Vec<String> = classes.iter().map(|c| c.word.to_string()).collect();
    assert_eq!(words.len(), 2, "{words:?}");
    assert!(classes.iter().all(|c| c.boundary && c.primitive));
    // both generators are cusps here
    assert!(enumerate_classes(&pants_group(0.0, 0.0, 0.0).unwrap(), 1).unwrap().is_empty());
    assert!(enumerate_classes(&g, 0).is_err());
}

#[test]
fn length_two_cyclic_classes() {
    // brute force over all 16 two-letter strings
    let mut seen: Vec<Vec<Letter>> = Vec::new();
    for x in 0..4u8 {
        for y in 0..4u8 {
            let w = vec![x, y];
            if y == x ^ 2 {
                continue;
            }
            let rot = vec![y, x];
            if !seen.contains(&w) && !seen.contains(&rot) {
                seen.push(w);
            }
        }
    }
    assert_eq!(seen.len(), 8);
    let two = cyclic_classes(2).into_iter().filter(|c| c.letter_len() == 2).count();
    assert_eq!(two, 8);
}

#[test]
fn square_is_not_primitive() {
    let w = CyclicWord::from_letters(&parse_letters("AA").unwrap()).unwrap();
    assert_eq!(w.root().1, 2);
    assert!(!w.is_primitive());
    let g = pants_group(1.0, 1.0, 0.0).unwrap();
    let aa = enumerate_classes(&g, 2).unwrap().into_iter().find(|c| c.k == 2 && PantsGroup::boundary_index(&c.word) == Some(0)).unwrap();
    assert!(!aa.primitive);
    assert!((aa.length - 2.0).abs() < 1e-12);
}

#[test]
fn below_systole_is_empty() {
    let g = pants_group(0.0, 0.0, 0.0).unwrap();
    let s = length_spectrum(&g, 3.0, &EnumerationConfig::default()).unwrap();
    assert!(s.classes.is_empty());
    let s = length_spectrum(&g, 8.0, &EnumerationConfig::default()).unwrap();
    let sys = s.systole().unwrap();
    // a²b: |tr| = 6
    assert!((sys - 2.0 * 3f64.acosh()).abs() < 1e-12);
    assert!(s.classes.iter().all(|c| c.length >= sys && c.length > 0.0));
    assert!(s.classes.windows(2).all(|w| w[0].length <= w[1].length));
}

fn multiset(classes: &[GeodesicClass], t: f64) -> Vec<(String, u32, f64)> {
    let mut v: Vec<_> =
        classes.iter().filter(|c| c.length <= t).map(|c| (c.word.to_string(), c.k, c.length)).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn word_length_calibration_is_stable_and_matches_orbit_walk() {
    let g = pants_group(0.0, 0.0, 0.0).unwrap();
    let t = 6.0;
    let l = calibrated_word_length(&g, t).unwrap();
    let short = multiset(&enumerate_classes(&g, l).unwrap(), t);
    let long = multiset(&enumerate_classes(&g, l + 4).unwrap(), t);
    assert_eq!(short, long);
    let walk = multiset(&length_spectrum(&g, t, &EnumerationConfig::default()).unwrap().classes, t);
    assert_eq!(short.len(), walk.len());
    for (a, b) in short.iter().zip(&walk) {
        assert_eq!((&a.0, a.1), (&b.0, b.1));
        assert!((a.2 - b.2).abs() < 1e-9);
    }
}

#[test]
fn orbit_margin_does_not_change_the_spectrum() {
    for lens in [[1.0, 1.0, 0.0], [0.0, 0.0, 7.3], [3.0, 5.0, 0.0]] {
        let g = pants_group(lens[0], lens[1], lens[2]).unwrap();
        let narrow = EnumerationConfig { radius_margin: 2.0, ..Default::default() };
        let wide = EnumerationConfig { radius_margin: 4.0, ..Default::default() };
        let a = length_spectrum(&g, 10.0, &narrow).unwrap();
        let b = length_spectrum(&g, 10.0, &wide).unwrap();
        assert_eq!(a.classes, b.classes, "{lens:?}");
    }
}

#[test]
fn worker_count_does_not_change_the_spectrum() {
    let g = pants_group(1.0, 1.0, 0.0).unwrap();
    let run = |w| length_spectrum(&g, 11.0, &EnumerationConfig { workers: w, ..Default::default() }).unwrap();
    let base = run(1);
    for w in [2, 8] {
        let other = run(w);
        assert_eq!(base.classes, other.classes);
        assert_eq!(base.nodes_visited, other.nodes_visited);
    }
}

#[test]
fn counts_grow_with_t() {
    let g = pants_group(0.0, 0.0, 0.0).unwrap();
    let s = length_spectrum(&g, 10.0, &EnumerationConfig::default()).unwrap();
    let counts: Vec<u64> = (0..=20).map(|i| s.count_in(1.0, 5.0 + 0.25 * i as f64)).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn budget_is_explicit() {
    let g = pants_group(0.0, 0.0, 0.0).unwrap();
    let cfg = EnumerationConfig { budget: 100, ..Default::default() };
    assert!(matches!(length_spectrum(&g, 12.0, &cfg), Err(Error::Budget { .. })));
}

fn cyclically_reduced_word() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(0u8..4, 2..14).prop_filter_map("reduce", |raw| {
        let mut w: Vec<Letter> = Vec::new();
        for l in raw {
            if w.last().is_some_and(|&p| p == l ^ 2) {
                w.pop();
            } else {
                w.push(l);
            }
        }
        while w.len() > 1 && w[0] == w[w.len() - 1] ^ 2 {
            w.pop();
            w.remove(0);
        }
        (!w.is_empty() && is_cyclically_reduced(&w)).then_some(w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rotation_and_inversion_preserve_length(w in cyclically_reduced_word(), r in 0usize..14) {
        let g = pants_group(1.0, 2.0, 0.0).unwrap();
        let tr = g.evaluate(&w).trace().abs();
        prop_assume!(tr > 2.0 + 1e-6);
        let base = length_of(&g.evaluate(&w));
        let r = r % w.len();
        let rotated: Vec<Letter> = w[r..].iter().chain(&w[..r]).copied().collect();
        let inverse: Vec<Letter> = w.iter().rev().map(|&l| l ^ 2).collect();
        prop_assert!((length_of(&g.evaluate(&rotated)) - base).abs() < 1e-10 * base.max(1.0));
        prop_assert!((length_of(&g.evaluate(&inverse)) - base).abs() < 1e-10 * base.max(1.0));
        let c = CyclicWord::from_letters(&w).unwrap();
        prop_assert_eq!(CyclicWord::from_letters(&rotated).unwrap(), c.clone());
        prop_assert_eq!(CyclicWord::from_letters(&inverse).unwrap().unoriented(), c.unoriented());
    }
}
