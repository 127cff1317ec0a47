use tricover::constructions::{generate, ConstructionParams, Variant};
use tricover::document::CoveringDocument;
use tricover::projection::{bound_decision, BoundVerdict};
use tricover::rat::{rat, Rat};
use tricover::svg;
use tricover::verify::verify;

const VARIANTS: [Variant; 4] = [Variant::Grid, Variant::Cs1, Variant::Cs2, Variant::Plus3];

fn at_bound(v: Variant, n: u32) -> tricover::constructions::Construction {
    generate(&ConstructionParams::new(v, n, v.eps_bound(n).unwrap_or_else(Rat::zero)), false).unwrap()
}

#[test]
fn documents_round_trip_for_all_constructions() {
    for n in 2..=8 {
        for v in VARIANTS {
            let c = at_bound(v, n);
            let doc = CoveringDocument::from_construction(&c);
            let text = doc.to_json();
            let back = CoveringDocument::parse(&text).unwrap();
            assert_eq!(back, doc, "{v} n={n}");
            assert_eq!(back.to_json(), text);
            let covering = back.to_covering().unwrap();
            assert_eq!(covering, c.covering);
            assert!(verify(&covering).covered, "{v} n={n} after round trip");
        }
    }
}

#[test]
fn svg_has_one_polygon_per_triangle() {
    for n in 2..=8 {
        for v in VARIANTS {
            let c = at_bound(v, n);
            let text = svg::render(&c.covering, Some(&c.roles));
            assert_eq!(text.matches("<polygon").count(), c.covering.pieces().len() + 1, "{v} n={n}");
            let by_role = |r: &str| text.matches(&format!("class=\"piece {r}\"")).count();
            assert_eq!(by_role("grid") + by_role("interleave") + by_role("final"), v.piece_count(n));
        }
    }
}

#[test]
fn svg_uses_unstretched_heights() {
    let c = at_bound(Variant::Grid, 2);
    let text = svg::render(&c.covering, None);
    let target = text.lines().find(|l| l.contains("class=\"target\"")).unwrap();
    let ys: Vec<f64> = target
        .split("points=\"")
        .nth(1)
        .unwrap()
        .trim_end_matches("\"/>")
        .split(' ')
        .map(|p| p.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let span = ys.iter().cloned().fold(f64::MIN, f64::max) - ys.iter().cloned().fold(f64::MAX, f64::min);
    assert!((span - 200.0 * 3f64.sqrt() / 2.0).abs() < 1e-3, "height {span}");
}

#[test]
fn bound_is_monotone_in_eps() {
    for extra in [2u32, 3] {
        for n in 2..=6u32 {
            let mut seen_impossible = false;
            for k in 1..=90 {
                let eps = Rat::new(k, 120);
                let r = bound_decision(n, extra, &eps).unwrap();
                if seen_impossible {
                    assert_eq!(r.verdict, BoundVerdict::Impossible, "n={n} extra={extra} eps={eps}");
                }
                seen_impossible |= r.verdict == BoundVerdict::Impossible;
            }
            assert!(seen_impossible);
        }
    }
}

#[test]
fn bound_agrees_with_constructions() {
    for n in 2..=8u32 {
        for (extra, v) in [(2u32, Variant::Cs1), (3, Variant::Plus3)] {
            let bound = v.eps_bound(n).unwrap();
            for eps in [&bound / &Rat::from_int(3), bound.clone(), &bound + &rat(1, 1000)] {
                let decided = bound_decision(n, extra, &eps).unwrap().verdict;
                let built = generate(&ConstructionParams::new(v, n, eps.clone()), true).unwrap();
                let covered = verify(&built.covering).covered;
                assert_eq!(decided == BoundVerdict::WithinBound, covered, "n={n} extra={extra} eps={eps}");
            }
        }
    }
}
