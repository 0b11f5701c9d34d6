use std::sync::Arc;
use chevalley_core::algebra::Chevalley;
use chevalley_core::group::Group;
use chevalley_core::ring::RingCtx;
use chevalley_core::units::generate_all;

#[test]
fn full_table_l3_gf7() {
    let gp = Group::new(Arc::new(Chevalley::new(3).unwrap()), RingCtx::prime_field(7).unwrap());
    let table = generate_all(&gp).unwrap();
    assert_eq!(table.recipes.len(), 441);
}
