use affnc::coxeter::CoxeterElement;
use affnc::diagram::*;
use affnc::interval;
use affnc::notation::parse_cycles;

fn running() -> CoxeterElement {
    CoxeterElement::new(7, &[3, 4, 7]).unwrap()
}

#[test]
fn augmentation_chain_between_examples() {
    let c = running();
    let p1 = parse_cycles("(1 -7 -4)_7 (2 -3)_7 (5)_7 (6)_7", 7).unwrap();
    let p2 = parse_cycles("(... 1 -5 -6 ...)(... 3 4 7 10 ...)(5 6)_7", 7).unwrap();
    let top = AnnularDiagram::decode(&p2, &c).unwrap();
    let mut d = AnnularDiagram::decode(&p1, &c).unwrap();
    let mut steps = 0;
    while d != top {
        let next = all_curves(&c, 14)
            .into_iter()
            .filter(|k| top.contains_curve(k) && !d.contains_curve(k))
            .find_map(|k| simple_connector_augment(&d, &k).ok().filter(|e| curve_subset(e, &top)))
            .expect("some curve of the top diagram augments");
        assert_eq!(next.rank(), d.rank() + 1);
        assert!(curve_subset(&d, &next));
        d = next;
        steps += 1;
    }
    assert_eq!(steps, 3);
}

#[test]
fn augmentation_reaches_every_upper_cover() {
    let c = CoxeterElement::new(4, &[1, 3]).unwrap();
    let uni = interval::bounded_universe(&c, 1, 10_000).unwrap();
    for p in &uni {
        let d = AnnularDiagram::decode(p, &c).unwrap();
        let augmented: Vec<_> = all_curves(&c, 8)
            .into_iter()
            .filter_map(|k| simple_connector_augment(&d, &k).ok())
            .map(|e| e.encode())
            .collect();
        for up in interval::covers_up(p, &c, 1).unwrap() {
            if uni.contains(&up) {
                assert!(augmented.contains(&up), "{p} -> {up}");
            }
        }
    }
}

#[test]
fn svg_of_the_coxeter_element_is_a_single_band() {
    let c = running();
    let d = AnnularDiagram::decode(&c.to_permutation(), &c).unwrap();
    let svg = render_svg(&d, &SvgOptions::default());
    assert_eq!(svg.matches("class=\"block annular\"").count(), 1);
    assert_eq!(svg.matches("class=\"block disk\"").count(), 0);
}
