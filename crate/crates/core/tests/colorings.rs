use num_rational::BigRational;
use proptest::prelude::*;
use qlat::coloring::{
    class_masses, complement_recolor, is_layered_on, layered_coloring, lubell_mass,
    random_coloring, Coloring, LubellMass,
};
use qlat::lattice::{full_mask, SubsetMask};

#[test]
fn whole_lattice_mass() {
    for dim in 0..=12 {
        let all: Vec<SubsetMask> = (0..1u64 << dim).map(|s| SubsetMask::new(s, dim).unwrap()).collect();
        let m = lubell_mass(&all, dim).unwrap();
        assert_eq!(m, LubellMass::from_integer(dim as i64 + 1));
    }
}

#[test]
fn class_masses_partition() {
    for seed in 0..100u64 {
        let dim = 2 + (seed % 9) as usize;
        let k = 2 + (seed % 3) as usize;
        let c = random_coloring(dim, k, seed).unwrap();
        let total = class_masses(&c)
            .into_iter()
            .fold(BigRational::from_integer(0.into()), |acc, m| acc + m.as_ratio().clone());
        assert_eq!(total, BigRational::from_integer((dim as i64 + 1).into()));
    }
}

proptest! {
    #[test]
    fn layered_is_layered(layers in proptest::collection::vec(0u8..3, 1..9)) {
        let dim = layers.len() - 1;
        let c = layered_coloring(dim, 3, &layers).unwrap();
        prop_assert!(is_layered_on(&c, full_mask(dim)));
    }

    #[test]
    fn files_round_trip(dim in 0usize..10, k in 2usize..5, seed in any::<u64>()) {
        let c = random_coloring(dim, k, seed).unwrap();
        let back = Coloring::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(&back, &c);
        let file = c.to_file();
        let upper = format!(
            r#"{{"N":{},"k":{},"cells_hex":"{}"}}"#,
            file.dim, file.k, file.cells_hex.to_uppercase()
        );
        prop_assert_eq!(Coloring::from_json(&upper).unwrap(), c);
    }

    #[test]
    fn complement_recolor_is_an_involution(dim in 0usize..8, seed in any::<u64>()) {
        let c = random_coloring(dim, 2, seed).unwrap();
        prop_assert_eq!(complement_recolor(&complement_recolor(&c).unwrap()).unwrap(), c);
    }
}
