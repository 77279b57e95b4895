//! Determinant of a few small configurations, and its behaviour under a
//! rotation and a reflection.

use atiyah_lab::geom::{apply_similitude, Similitude};
use atiyah_lab::{atiyah_determinant, Point3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> atiyah_lab::Result<()> {
    let h = 3f64.sqrt() / 2.0;
    let configs: [(&str, Vec<Point3>); 4] = [
        ("two points", vec![Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 2.0, 3.0)]),
        ("equilateral triangle", vec![Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 0.0, 0.0), Point3::new(0.5, h, 0.0)]),
        ("collinear", (0..5).map(|k| Point3::new(0.0, 0.0, k as f64 * k as f64)).collect()),
        (
            "skew quadruple",
            vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(1.0, 0.1, 0.0),
                Point3::new(0.2, 0.9, 0.1),
                Point3::new(0.3, 0.2, 0.8),
            ],
        ),
    ];
    for (name, pts) in &configs {
        let d = atiyah_determinant(pts)?;
        println!("{name:>22}: D = {:.12} {:+.12}i  |D| = {:.12}", d.value.re, d.value.im, d.abs());
    }

    let pts = &configs[3].1;
    let d = atiyah_determinant(pts)?.value;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for reverse in [false, true] {
        let s = Similitude::random(&mut rng, reverse);
        let moved = atiyah_determinant(&apply_similitude(&s, pts))?.value;
        println!("orientation {:+}: D = {:.12} {:+.12}i", s.orientation(), moved.re, moved.im);
    }
    println!("original:       D = {:.12} {:+.12}i", d.re, d.im);
    Ok(())
}
