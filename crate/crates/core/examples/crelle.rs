//! The Crelle triangle of a tetrahedron and of coplanar quadruples.

use atiyah_lab::fourpoint::{crelle_angles_coplanar, crelle_triangle, crelle_volume_residual, tetra_circumradius};
use atiyah_lab::geom::cayley_menger_vsq;
use atiyah_lab::{FourPointMetrics, Point3};

fn main() -> atiyah_lab::Result<()> {
    let tet = [
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(2.0, 0.0, 0.0),
        Point3::new(0.3, 1.5, 0.0),
        Point3::new(0.7, 0.4, 1.2),
    ];
    let m = FourPointMetrics::from_points(&tet)?;
    let c = crelle_triangle(&m);
    let v = cayley_menger_vsq(&m)?.sqrt();
    let r = tetra_circumradius(&tet)?;
    println!("sides {:?}", c.sides);
    println!("area {:.12}  6 V R {:.12}  relative gap {:.2e}", c.area, 6.0 * v * r, crelle_volume_residual(&tet)?);

    let convex = [Point3::new(0.0, 0.0, 0.0), Point3::new(3.0, 0.2, 0.0), Point3::new(2.5, 2.0, 0.0), Point3::new(-0.4, 1.6, 0.0)];
    let reflex = [Point3::new(0.0, 0.0, 0.0), Point3::new(3.0, 0.0, 0.0), Point3::new(0.8, 0.7, 0.0), Point3::new(0.5, 2.5, 0.0)];
    for (name, quad) in [("convex", convex), ("interior point", reflex)] {
        let m = FourPointMetrics::from_points(&quad)?;
        let from_sides = crelle_triangle(&m).angles.expect("not concyclic");
        let from_quad = crelle_angles_coplanar(&quad)?;
        println!("{name}: {:?} labels {:?}", from_quad.case, from_quad.labels);
        println!("  angles from the quadrilateral {:?}", from_quad.angles);
        println!("  angles from the sides         {from_sides:?}");
    }
    Ok(())
}
