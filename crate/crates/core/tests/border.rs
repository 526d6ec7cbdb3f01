use eqlab::border::{
    enumerate_border_violations, feasibility_via_maxflow, optimal_bic_revenue, BidderPrior, InterimRule, Prior,
};
use eqlab::{int, rat, Budget, Rational};

fn two_uniform() -> Prior {
    let b = BidderPrior::uniform(vec![int(1), int(2)]).unwrap();
    Prior::new(vec![b.clone(), b]).unwrap()
}

#[test]
fn maxflow_agrees_with_border_enumeration_on_a_quarter_grid() {
    let p = two_uniform();
    let grid: Vec<Rational> = (0..=4).map(|k| rat(k, 4)).collect();
    let mut feasible = 0;
    for a in &grid {
        for b in &grid {
            for c in &grid {
                for d in &grid {
                    let r = InterimRule::new(vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]], None).unwrap();
                    let flow = feasibility_via_maxflow(&p, &r, &Budget::default()).unwrap();
                    let violations = enumerate_border_violations(&p, &r, &Budget::default()).unwrap();
                    assert_eq!(flow.feasible, violations.is_empty());
                    if flow.feasible {
                        feasible += 1;
                        assert_eq!(flow.witness.unwrap().interim(&p), r.y);
                    } else {
                        assert!(flow.violated.unwrap().is_violated());
                    }
                }
            }
        }
    }
    assert!(feasible > 0 && feasible < 625);
}

// Revenue of the best rule on a coarse grid, with payments chosen per
// bidder from a grid subject to BIC and IR.
fn grid_revenue(prior: &Prior, steps: i64) -> Rational {
    let ys: Vec<Rational> = (0..=steps).map(|k| rat(k, steps)).collect();
    let qs: Vec<Rational> = (0..=2 * steps).map(|k| rat(k, steps)).collect();
    let mut best = Rational::zero();
    let bidder_best = |i: usize, y: &[Rational]| -> Option<Rational> {
        let v = &prior.bidders[i].support;
        let f = &prior.bidders[i].probs;
        let mut out: Option<Rational> = None;
        for q0 in &qs {
            for q1 in &qs {
                let q = [q0, q1];
                let ok = (0..2).all(|a| {
                    let own = &v[a] * &y[a] - q[a];
                    own >= Rational::zero() && (0..2).all(|b| own >= &v[a] * &y[b] - q[b])
                });
                if ok {
                    let rev = &f[0] * q0 + &f[1] * q1;
                    if out.as_ref().is_none_or(|o| rev > *o) {
                        out = Some(rev);
                    }
                }
            }
        }
        out
    };
    for a in &ys {
        for b in &ys {
            let y1 = [a.clone(), b.clone()];
            let Some(r1) = bidder_best(0, &y1) else { continue };
            if prior.n() == 1 {
                best = best.max(r1);
                continue;
            }
            for c in &ys {
                for d in &ys {
                    let rule = InterimRule::new(vec![y1.to_vec(), vec![c.clone(), d.clone()]], None).unwrap();
                    if !feasibility_via_maxflow(prior, &rule, &Budget::default()).unwrap().feasible {
                        continue;
                    }
                    if let Some(r2) = bidder_best(1, &[c.clone(), d.clone()]) {
                        best = best.max(&r1 + r2);
                    }
                }
            }
        }
    }
    best
}

#[test]
fn lp_revenue_matches_grid_search() {
    let single = Prior::new(vec![BidderPrior::uniform(vec![int(1), int(2)]).unwrap()]).unwrap();
    assert_eq!(optimal_bic_revenue(&single, &Budget::default()).unwrap().revenue, grid_revenue(&single, 8));
    let two = two_uniform();
    let lp = optimal_bic_revenue(&two, &Budget::default()).unwrap();
    let grid = grid_revenue(&two, 4);
    assert!(grid <= lp.revenue);
    assert_eq!(grid, rat(3, 2));
}
