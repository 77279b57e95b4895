//! The full four-point report for a regular tetrahedron, a square and a
//! generic quadruple.

use atiyah_lab::fourpoint::four_point_report;
use atiyah_lab::Point3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = 3f64.sqrt();
    let cases = [
        (
            "regular tetrahedron",
            [
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(0.5, s / 2.0, 0.0),
                Point3::new(0.5, s / 6.0, (2.0f64 / 3.0).sqrt()),
            ],
        ),
        (
            "unit square",
            [Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 0.0, 0.0), Point3::new(1.0, 1.0, 0.0), Point3::new(0.0, 1.0, 0.0)],
        ),
        (
            "generic",
            [Point3::new(0.0, 0.0, 0.0), Point3::new(1.0, 0.1, 0.0), Point3::new(0.2, 0.9, 0.1), Point3::new(0.3, 0.2, 0.8)],
        ),
    ];
    for (name, pts) in cases {
        println!("== {name}");
        println!("{}", serde_json::to_string_pretty(&four_point_report(&pts)?)?);
    }
    Ok(())
}
