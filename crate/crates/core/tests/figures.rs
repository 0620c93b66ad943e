use std::io::BufReader;

use wavespin_core::io::{
    luminance, parse_svg_arrows, quiver_arrows, read_field_csv, write_field_csv, write_heatmap,
    write_quiver_svg, Ppm, QuiverOptions,
};
use wavespin_core::sampling::{packet_table, well_table};
use wavespin_core::{PacketConfig, PacketState, WellConfig, WellState};

fn well() -> WellState {
    WellState::solve_ground(WellConfig::new(1e-8).unwrap()).unwrap()
}

#[test]
fn density_heatmap_peaks_at_center() {
    let t = well_table(&well(), 101).unwrap();
    let mut buf = Vec::new();
    let scale = write_heatmap(&t, "rho_rel", &mut buf).unwrap();
    assert_eq!(scale.max, 1.0);
    let img = Ppm::parse(&buf).unwrap();
    assert_eq!((img.width, img.height), (101, 101));
    let brightest = (0..img.pixels.len())
        .max_by(|&a, &b| luminance(img.pixels[a]).total_cmp(&luminance(img.pixels[b])))
        .unwrap();
    assert_eq!((brightest % 101, brightest / 101), (50, 50));
}

#[test]
fn current_magnitude_heatmap_is_a_crater() {
    let s = well();
    let t = well_table(&s, 101).unwrap();
    let jmag = t.column("jmag").unwrap();
    let max = jmag.iter().cloned().fold(0.0, f64::max);
    let center = jmag[50 + 101 * 50];
    assert!(center < 0.01 * max);
    // along each half-axis |j| rises from zero, peaks inside, falls to the wall
    let row: Vec<f64> = (50..101).map(|i| jmag[i + 101 * 50]).collect();
    let peak = row
        .iter()
        .cloned()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
        .0;
    assert!(peak > 0 && peak < 50);
    assert!(row[..=peak].windows(2).all(|w| w[1] >= w[0]));
    assert!(row[peak..].windows(2).all(|w| w[1] <= w[0]));

    let mut buf = Vec::new();
    write_heatmap(&t, "jmag", &mut buf).unwrap();
    let img = Ppm::parse(&buf).unwrap();
    let c = luminance(img.pixel(50, 50));
    let ring = luminance(img.pixel(50 + peak, 50));
    assert!(c < ring);
}

/// Angle in degrees between two plane vectors, ignoring orientation.
fn axis_angle(v: (f64, f64), axis: (f64, f64)) -> f64 {
    let cos = (v.0 * axis.0 + v.1 * axis.1).abs() / (v.0.hypot(v.1) * axis.0.hypot(axis.1));
    cos.min(1.0).acos().to_degrees()
}

#[test]
fn quiver_counterclockwise_and_wall_parallel() {
    let s = well();
    let n = 201;
    let t = well_table(&s, n).unwrap();
    let opts = QuiverOptions {
        stride: 1,
        reverse: s.constants.e < 0.0,
    };
    let arrows = quiver_arrows(&t, &opts).unwrap();
    assert!(!arrows.is_empty());
    for a in &arrows {
        assert!(a.x * a.dy - a.y * a.dx >= 0.0, "{a:?}");
    }
    let l = s.half_width();
    let mut checked = 0;
    for a in &arrows {
        let (i, j) = a.node;
        let near_x_wall = i == 1 || i == n - 2;
        let near_y_wall = j == 1 || j == n - 2;
        if near_x_wall && a.y.abs() <= 0.8 * l {
            assert!(axis_angle((a.dx, a.dy), (0.0, 1.0)) <= 5.0, "{a:?}");
            checked += 1;
        }
        if near_y_wall && a.x.abs() <= 0.8 * l {
            assert!(axis_angle((a.dx, a.dy), (1.0, 0.0)) <= 5.0, "{a:?}");
            checked += 1;
        }
    }
    assert!(checked > 600);

    // screen y points down, so counterclockwise on screen is a negative cross product
    let mut buf = Vec::new();
    let drawn = write_quiver_svg(&t, &mut buf, &QuiverOptions { stride: 10, ..opts }).unwrap();
    let svg = String::from_utf8(buf).unwrap();
    let parsed = parse_svg_arrows(&svg);
    assert_eq!(parsed.len(), drawn);
    let (cx, cy) = (400.0, 400.0);
    for (_, [x1, y1, x2, y2]) in parsed {
        assert!((x1 - cx) * (y2 - y1) - (y1 - cy) * (x2 - x1) <= 1e-9);
    }
}

#[test]
fn tables_round_trip_through_csv() {
    let p = PacketState::new(PacketConfig::new(1e-8).unwrap()).unwrap();
    let t = packet_table(&p, 0.3 * p.decoherence_time(), 21, 3e-8).unwrap();
    let mut buf = Vec::new();
    write_field_csv(&t, &mut buf).unwrap();
    let back = read_field_csv(BufReader::new(&buf[..])).unwrap();
    assert_eq!(back.columns, t.columns);
    for (a, b) in back.rows.iter().zip(&t.rows) {
        for (x, y) in a.iter().zip(b) {
            assert!(x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()));
        }
    }
    let text = String::from_utf8(buf).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.starts_with("# x(m),y(m),rho(C/m^3)"));
}
