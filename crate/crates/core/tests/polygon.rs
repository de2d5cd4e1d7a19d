mod common;

use num_traits::Zero;
use pezzo_core::fixtures;
use pezzo_core::mutation::quiver_mutate_right;
use pezzo_core::polygon::{omega, polygon_of, shear, toric_system};
use pezzo_core::{Collection, Point, Polygon, Quiver, SurfaceKind, Q};

fn p2() -> Collection {
    Collection::line_bundles(SurfaceKind::P2, &[vec![0], vec![1], vec![2]]).unwrap()
}

#[test]
fn triangle_from_brute_force_duals() {
    let objects = [(1, 0, 1), (1, 1, 3), (1, 2, 6)];
    let duals = common::brute_force_duals(&objects);
    assert_eq!(duals.iter().map(|f| (f.0, f.1)).collect::<Vec<_>>(), vec![(1, 3), (-2, -5), (1, 2)]);
    let oracle = common::plane_triangle_oracle(&objects, &duals);
    assert_eq!(oracle, vec![(1, 8), (-1, -7), (0, -1)]);
    let p = polygon_of(&p2()).unwrap();
    assert_eq!(p, Polygon::from_ints(&oracle));
    for k in 0..3 {
        assert_eq!(p.r_squared(k), Q::from_integer(1));
    }
    assert_eq!(p.area_x2(), Q::from_integer(3));
}

#[test]
fn toric_system_of_the_plane() {
    let t = toric_system(&p2()).unwrap();
    assert_eq!(t, vec![vec![Q::from_integer(1)]; 3]);
}

#[test]
fn toric_system_properties_on_fixtures() {
    for c in common::fixture_collections() {
        let s = c.s();
        let n = c.len();
        let t = toric_system(&c).unwrap();
        let dot = |a: &[Q], b: &[Q]| -> Q {
            let mut acc = Q::zero();
            for i in 0..a.len() {
                for j in 0..b.len() {
                    acc += a[i] * b[j] * Q::from_integer(s.intersection[i][j] as i128);
                }
            }
            acc
        };
        let sum: Vec<Q> = (0..s.picard_rank).map(|k| t.iter().map(|v| v[k]).sum()).collect();
        let minus_k: Vec<Q> = s.canonical.iter().map(|x| Q::from_integer(-*x as i128)).collect();
        assert_eq!(sum, minus_k);
        let r = c.ranks();
        for i in 0..n {
            let prev = &t[(i + n - 1) % n];
            assert_eq!(dot(prev, &t[i]), Q::new(1, (r[i] * r[i]) as i128));
            for j in 0..n {
                let adjacent = j == i || (j + 1) % n == i || (i + 1) % n == j;
                if !adjacent {
                    assert!(dot(&t[i], &t[j]).is_zero());
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let tij: Vec<Q> = (0..s.picard_rank).map(|k| (i..j).map(|m| t[m][k]).sum()).collect();
                let scaled: Vec<Q> = tij.iter().map(|x| *x * Q::from_integer((r[i] * r[j]) as i128)).collect();
                assert!(scaled.iter().all(|x| x.is_integer()));
                let a = dot(&scaled, &scaled);
                let chi = (a + Q::from_integer((r[i] * r[i] + r[j] * r[j]) as i128)) / Q::from_integer((r[i] * r[j]) as i128);
                assert_eq!(chi, Q::from_integer(c.chi(i, j) as i128));
            }
        }
    }
}

#[test]
fn fixture_polygons_close_and_end_at_minus_one() {
    for c in common::fixture_collections() {
        let p = polygon_of(&c).unwrap();
        assert_eq!(*p.vertices.last().unwrap(), Point::int(0, -1));
        let total = p.edges().into_iter().fold(Point::default(), |a, b| a + b);
        assert!(total.is_zero());
        p.check_lattice_invariants(&c.ranks()).unwrap();
        let sq: i64 = c.ranks().iter().map(|r| r * r).sum();
        assert_eq!(p.area_x2(), Q::from_integer(sq as i128));
        assert!(p.is_convex().unwrap());
        assert!(p.origin_in_forbidden());
        assert_eq!(p.admissible_vertices().len(), 3, "{} {:?}", c.surface, c.ranks());
        assert!(p.parallel_long_edges().is_empty());
        let q = Quiver::of_collection(&c).unwrap();
        assert!(q.satisfies_plucker() && q.is_antisymmetric() && !q.has_loops());
        let red = q.reduced().unwrap();
        assert!(red.satisfies_plucker() && red.is_complete());
        let mut covolume = 0i128;
        for a in &p.vertices {
            for b in &p.vertices {
                covolume = num_integer::gcd(covolume, omega(*a, *b).to_integer());
            }
        }
        assert_eq!(covolume, 1, "vertices span the lattice");
    }
}

#[test]
fn long_edges_of_the_three_two_polygon() {
    let c = fixtures::for_surface(SurfaceKind::P1xP1).entry([3, 2]).unwrap().collection(SurfaceKind::P1xP1).unwrap();
    let p = polygon_of(&c).unwrap();
    let le = p.long_edges();
    let mut subdivisions: Vec<usize> = le.iter().map(|e| e.edges.len()).collect();
    let start = le.iter().position(|e| e.edges.contains(&0)).unwrap();
    subdivisions.rotate_left(start);
    assert_eq!(subdivisions, vec![1, 2, 1]);
    let tri = polygon_of(&p2()).unwrap();
    assert_eq!(tri.long_edges().len(), 3);
}

#[test]
fn parallel_long_edges_of_a_non_block_complete_collection() {
    let c = Collection::line_bundles(SurfaceKind::P1xP1, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 1]]).unwrap();
    assert!(c.is_very_strong().unwrap());
    assert_eq!(c.detect_blocks().unwrap().count(), 4);
    let q = Quiver::of_collection(&c).unwrap();
    assert_eq!(q.c[0][2] * q.c[1][3], 0);
    assert!(q.satisfies_plucker());
    let p = polygon_of(&c).unwrap();
    assert!(!p.parallel_long_edges().is_empty());
    assert!(!q.reduced().unwrap().is_complete());
}

#[test]
fn quivers_of_the_triangle_and_its_mutation() {
    let q = Quiver::of_collection(&p2()).unwrap();
    assert_eq!(q.c, vec![vec![0, 3, -3], vec![-3, 0, 3], vec![3, -3, 0]]);
    let m = quiver_mutate_right(&p2(), 0).unwrap().collection;
    let p = polygon_of(&m).unwrap();
    assert_eq!(p, Polygon::from_ints(&[(1, 11), (-1, -7), (0, -1)]));
    let qm = Quiver::of_polygon(&p).unwrap();
    assert_eq!((qm.c[0][1], qm.c[1][2], qm.c[2][0]), (3, 3, 6));
    assert_eq!(p.area_x2(), Q::from_integer(6));
    assert!(!p.origin_in_forbidden());
}

#[test]
fn shears() {
    let (u, v) = (Point::int(1, 8), Point::int(0, -1));
    assert_eq!(shear(u, v, Point::int(-1, -7)).unwrap(), Point::int(1, 11));
    assert_eq!(shear(u, v, u).unwrap(), v);
    let on_line = v - u;
    assert_eq!(shear(u, v, on_line).unwrap(), on_line);
    let (a, b) = (Point::int(3, -2), Point::int(-5, 7));
    assert_eq!(omega(shear(u, v, a).unwrap(), shear(u, v, b).unwrap()), omega(a, b));
    assert!(shear(Point::int(1, 1), Point::int(2, 2), a).is_err());
}

#[test]
fn polygon_braid_moves() {
    let tri = polygon_of(&p2()).unwrap();
    let moved = tri.braid_right(1).unwrap();
    assert_eq!(moved, polygon_of(&p2().braid_right(1).unwrap()).unwrap());
    assert_eq!(moved.ranks().unwrap(), vec![1, 2, 1]);
    assert_eq!(moved.braid_left(1).unwrap(), tri);
    assert!(tri.braid_left(0).is_err());
}

#[test]
fn opposing_and_admissible_vertices() {
    let tri = polygon_of(&p2()).unwrap();
    assert_eq!(tri.opposing_vertices(0), vec![1]);
    assert_eq!(tri.vertices[1], Point::int(-1, -7));
    assert_eq!(tri.admissible_vertices(), vec![0, 1, 2]);
    assert_eq!(tri.area_delta_sign(0), 1);
    for i in 0..3 {
        assert_eq!(tri.earliest_opposing(i), (i + 1) % 3);
    }
}

#[test]
fn forbidden_region_of_the_triangle_is_medial() {
    let tri = polygon_of(&p2()).unwrap();
    let half = Q::new(1, 2);
    let mids: Vec<Point> = (0..3).map(|k| (tri.v(k) + tri.v(k + 1)).scale(half)).collect();
    for hp in tri.forbidden_region() {
        let on_boundary = mids.iter().filter(|m| omega(hp.direction, **m) == hp.bound).count();
        assert_eq!(on_boundary, 2);
        assert!(mids.iter().all(|m| hp.contains(*m)));
    }
    assert!(tri.origin_in_forbidden());
}
