//! The numerical kernels are generic over the scalar; exercise the f32
//! instantiation end to end (with correspondingly loose tolerances).

use std::sync::Arc;

use svderiv_core::derivative::{derivative_membership, LimitSchedule};
use svderiv_core::geometry::{normal_direction, ConvexBody};
use svderiv_core::maps::{generated_map, phi_tau, GraphPoint, VecFn};
use svderiv_core::Vector;

type V32 = Vector<f32>;

#[test]
fn f32_geometry_and_membership() {
    // support and projection on an f32 square
    let square = ConvexBody::<f32>::from_vertices(vec![
        V32::from_vec(vec![1.0, 1.0]),
        V32::from_vec(vec![1.0, -1.0]),
        V32::from_vec(vec![-1.0, 1.0]),
        V32::from_vec(vec![-1.0, -1.0]),
    ])
    .unwrap();
    let p = V32::from_vec(vec![1.0, 0.0]);
    assert_eq!(square.support(&p).unwrap(), 1.0f32);
    let (dist, nearest) = square.distance_to(&V32::from_vec(vec![2.0, 2.0])).unwrap();
    assert!((dist - 2.0f32.sqrt()).abs() < 1e-5);
    assert!((nearest - V32::from_vec(vec![1.0, 1.0])).norm() < 1e-5);

    let n = normal_direction(&square, &V32::from_vec(vec![1.0, 0.0]))
        .unwrap()
        .unwrap();
    assert!((n - V32::from_vec(vec![1.0, 0.0])).norm() < 1e-5);

    // phi branches in f32
    assert_eq!(phi_tau(0.0f32, -1.0).unwrap(), 2.0);

    // membership on the f32 segment map
    let f1: VecFn<f32> = Arc::new(|x: &V32| x.clone());
    let f2: VecFn<f32> = Arc::new(|x: &V32| x.add_scalar(1.0));
    let seg = generated_map(1, 1, vec![f1, f2], None).unwrap();
    let gp = GraphPoint::new(&seg, V32::from_element(1, 0.0), V32::from_element(1, 0.0)).unwrap();
    let schedule = LimitSchedule::<f32>::new(0.1, 0.5, 12).unwrap();
    let u = V32::from_element(1, 1.0);
    assert!(
        derivative_membership(&seg, &gp, &u, &V32::from_element(1, 2.0), &schedule, 1e-3).unwrap()
    );
    assert!(
        !derivative_membership(&seg, &gp, &u, &V32::from_element(1, 0.5), &schedule, 1e-3).unwrap()
    );
}
