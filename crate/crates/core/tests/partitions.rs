use proptest::prelude::*;
use wreathmac::partitions::{
    core_quot, enumerate, from_core_quot, multipartitions, part, partitions_of, Partition,
};

/// Removes rim hooks of length `l` until none remain.
fn core_by_peeling(lambda: &Partition, l: usize) -> Partition {
    let mut beta: Vec<usize> = {
        let n = lambda.len();
        lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| p + n - 1 - i)
            .collect()
    };
    loop {
        let pos = beta
            .iter()
            .position(|&b| b >= l && !beta.contains(&(b - l)));
        match pos {
            Some(i) => beta[i] -= l,
            None => break,
        }
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let n = beta.len();
    let parts = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b - (n - 1 - i))
        .filter(|&p| p > 0)
        .collect();
    Partition::new(parts).unwrap()
}

#[test]
fn box_statistics_example() {
    let s = part("3,3,2,1").box_stats(1, 2).unwrap();
    assert_eq!((s.arm, s.leg, s.hook, s.content), (2, 1, 4, -1));
    assert!(part("3,3,2,1").box_stats(4, 2).is_err());
}

#[test]
fn maya_example() {
    let lam = part("3,2,2,1,1,1");
    let m = lam.maya();
    let black: Vec<i64> = (-3..=5).filter(|&i| m.is_black(i)).collect();
    assert_eq!(black, [-2, 1, 5]);
    assert_eq!(m.charge(), 0);
    let cq = core_quot(&lam, 3).unwrap();
    assert_eq!(cq.core, part("3,1"));
    assert_eq!(cq.quotient, [part(""), part(""), part("1,1")]);
}

#[test]
fn two_quotients_of_two_boxes() {
    assert_eq!(
        core_quot(&part("2"), 2).unwrap().quotient,
        [part("1"), part("")]
    );
    assert_eq!(
        core_quot(&part("1,1"), 2).unwrap().quotient,
        [part(""), part("1")]
    );
}

#[test]
fn core_quotient_bijection_exhaustive() {
    for l in 2..=4 {
        for n in 0..=10 {
            for lam in partitions_of(n) {
                let cq = core_quot(&lam, l).unwrap();
                assert_eq!(cq.core, core_by_peeling(&lam, l), "{lam} l={l}");
                assert_eq!(cq.core.size() + l * cq.quotient_size(), n);
                assert!(cq.core.is_core(l).unwrap());
                assert_eq!(from_core_quot(&cq.core, &cq.quotient, l).unwrap(), lam);
                assert_eq!(lam.maya().to_partition().unwrap(), lam);
            }
        }
    }
}

#[test]
fn enumerate_matches_filter() {
    for l in 2..=3 {
        for n in 0..=9 {
            for core in partitions_of(n)
                .into_iter()
                .filter(|p| p.is_core(l).unwrap())
            {
                for extra in 0..=2 {
                    let size = n + l * extra;
                    let got = enumerate(size, l, &core).unwrap();
                    let want: Vec<Partition> = partitions_of(size)
                        .into_iter()
                        .filter(|p| core_quot(p, l).unwrap().core == core)
                        .collect();
                    assert_eq!(got, want);
                    assert_eq!(got.len(), multipartitions(extra, l).len());
                }
            }
        }
    }
}

#[test]
fn non_core_is_rejected() {
    assert!(enumerate(4, 2, &part("2")).is_err());
    assert!(core_quot(&part("1"), 0).is_err());
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..7, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn transpose_is_involution(p in arb_partition()) {
        prop_assert_eq!(p.transpose().transpose(), p.clone());
        prop_assert_eq!(p.transpose().size(), p.size());
    }

    #[test]
    fn hooks_sum_consistently(p in arb_partition()) {
        let t = p.transpose();
        for (a, b) in p.boxes() {
            let s = p.box_stats(a, b).unwrap();
            let u = t.box_stats(b, a).unwrap();
            prop_assert_eq!(s.hook, u.hook);
            prop_assert_eq!((s.arm, s.leg), (u.leg, u.arm));
            prop_assert_eq!(s.content, -u.content);
        }
    }

    #[test]
    fn dominance_reverses_under_transpose(n in 0usize..9, i in 0usize..30, j in 0usize..30) {
        let ps = partitions_of(n);
        let (a, b) = (&ps[i % ps.len()], &ps[j % ps.len()]);
        let ab = a.dominance_leq(b, None).unwrap();
        prop_assert_eq!(ab, b.transpose().dominance_leq(&a.transpose(), None).unwrap());
        prop_assert!(a.dominance_leq(a, None).unwrap());
        if ab && b.dominance_leq(a, None).unwrap() {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn display_parse_round_trip(p in arb_partition()) {
        let s = p.to_string();
        prop_assert_eq!(s.parse::<Partition>().unwrap(), p);
    }
}
