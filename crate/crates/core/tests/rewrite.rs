use catqm::kernel::{typecheck, Path};
use catqm::rewrite::{apply_rule, catalog, measure, normalize, semantic_equal, step, Sampler};

#[test]
fn every_rule_is_sound_in_both_models() {
    for (k, r) in catalog().iter().enumerate() {
        let mut s = Sampler::new(1000 + k as u64);
        for n in 0..100 {
            let lhs = (r.sample)(&mut s);
            let rhs = apply_rule(&lhs, r, &Path::root(), s.signature())
                .unwrap_or_else(|e| panic!("{} instance {n}: {e}\n{lhs:?}", r.name));
            assert!(semantic_equal(&lhs, &rhs, s.signature(), s.exact()).unwrap(), "{} exact {n}", r.name);
            assert!(semantic_equal(&lhs, &rhs, s.signature(), s.rel()).unwrap(), "{} rel {n}", r.name);
        }
    }
}

#[test]
fn every_step_decreases_the_measure() {
    for seed in 0..200 {
        let mut s = Sampler::new(seed);
        let mut t = s.term(2 + (seed as usize % 11));
        let j = typecheck(&t, s.signature()).unwrap();
        let mut steps = 0;
        while let Some((path, r, out)) = step(&t, s.signature()) {
            let mut next = t.clone();
            *path.get_mut(&mut next).unwrap() = out;
            assert!(measure(&next) < measure(&t), "rule {} did not decrease the measure", r.name);
            assert_eq!(typecheck(&next, s.signature()).unwrap(), j, "rule {} changed the type", r.name);
            t = next;
            steps += 1;
        }
        assert!(steps < 10_000);
    }
}

#[test]
fn normal_forms_keep_their_denotation() {
    for seed in 0..100 {
        let mut s = Sampler::new(5000 + seed);
        let t = s.term(2 + (seed as usize % 5));
        let n = normalize(&t, s.signature());
        assert!(semantic_equal(&t, &n, s.signature(), s.exact()).unwrap(), "seed {seed}");
        assert!(semantic_equal(&t, &n, s.signature(), s.rel()).unwrap(), "seed {seed}");
        assert!(step(&n, s.signature()).is_none());
    }
}
