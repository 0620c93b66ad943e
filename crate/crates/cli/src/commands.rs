use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wavespin_core::io::{
    write_field_csv_file, write_heatmap_file, write_manifest_file, write_quiver_svg_file,
    ObservablesManifest, QuiverOptions, Scalar,
};
use wavespin_core::sampling::{packet_table, well_table};
use wavespin_core::verify::{
    verify_packet as run_packet_checks, verify_well as run_well_checks, OrderTolerance,
    PacketVerifyOptions, VerificationReport, WellVerifyOptions,
};
use wavespin_core::{Error, PacketConfig, PacketState, PhysicalConstants, WellConfig, WellState};

use crate::{ObservablesArgs, PacketArgs, VerifyPacketArgs, VerifyWellArgs, WellArgs};

/// Reference values the manifests are compared against.
const ETA_10NM: f64 = 3.033e-5;
const DECOHERENCE_10NM: f64 = 8.638e-13;
const COMPTON: f64 = 3.862e-13;

/// Smallest spin quadrature order accepted on the command line.
const MIN_SPIN_ORDER: usize = 32;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Verification(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

fn io_err(path: &Path) -> impl Fn(Error) -> CliError + '_ {
    move |e| match e {
        Error::Io(_) | Error::Json(_) => CliError::Io(format!("{}: {e}", path.display())),
        other => CliError::from(other),
    }
}

fn create_dir(dir: &Path) -> CliResult {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

fn check_order(order: usize) -> CliResult {
    if order < MIN_SPIN_ORDER {
        return Err(CliError::Usage(format!(
            "--order {order}: spin quadrature needs at least {MIN_SPIN_ORDER} nodes per axis"
        )));
    }
    Ok(())
}

fn check_grid(flag: &str, nodes: usize) -> CliResult {
    if nodes < wavespin_core::numerics::grid::MIN_NODES {
        return Err(CliError::Usage(format!(
            "{flag} {nodes}: need at least {} nodes per axis",
            wavespin_core::numerics::grid::MIN_NODES
        )));
    }
    Ok(())
}

fn check_sweep(grids: &[usize]) -> CliResult {
    if grids.len() < 3 {
        return Err(CliError::Usage(format!(
            "--grids: a convergence slope needs at least 3 grids, got {}",
            grids.len()
        )));
    }
    for &n in grids {
        check_grid("--grids", n)?;
    }
    if grids.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage(
            "--grids must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn check_stride(stride: usize, grid: usize) -> CliResult {
    if stride == 0 || stride > grid {
        return Err(CliError::Usage(format!(
            "--quiver-stride {stride}: must be between 1 and the grid size {grid}"
        )));
    }
    Ok(())
}

fn well_state(flag: &str, half_width: f64) -> Result<WellState, CliError> {
    let config =
        WellConfig::new(half_width).map_err(|e| CliError::Usage(format!("{flag}: {e}")))?;
    Ok(WellState::solve_ground(config)?)
}

fn packet_state(width: f64) -> Result<PacketState, CliError> {
    let config = PacketConfig::new(width).map_err(|e| CliError::Usage(format!("--d: {e}")))?;
    Ok(PacketState::new(config)?)
}

/// Attaches a reference value only when the geometry is the one it was quoted for.
fn with_reference_at(
    scalar: Scalar,
    length: f64,
    quoted_at: f64,
    value: f64,
    rel_tol: f64,
) -> Scalar {
    if (length / quoted_at - 1.0).abs() < 1e-12 {
        scalar.with_reference(value, rel_tol)
    } else {
        scalar
    }
}

fn well_scalars(m: &mut ObservablesManifest, s: &WellState, order: usize) {
    let k = &s.constants;
    let hb = k.hbar;
    let sz = s.spin_vector_with_order(order)[2];
    m.scalar(
        "eta",
        with_reference_at(
            Scalar::new(s.eta, "1"),
            s.half_width(),
            1e-8,
            ETA_10NM,
            1e-3,
        ),
    )
    .scalar("E", Scalar::new(s.energy, "J"))
    .scalar("E_minus_rest", Scalar::new(s.kinetic, "J"))
    .scalar("N", Scalar::new(s.norm, "1/m"))
    .scalar(
        "S2",
        Scalar::new(s.spin_squared_with_order(order), "J^2 s^2"),
    )
    .scalar("S2_closed_form", Scalar::new(0.75 * hb * hb, "J^2 s^2"))
    .scalar("Sz", Scalar::new(sz, "J s"))
    .scalar("Sz_closed_form", Scalar::new(s.spin_z_closed_form(), "J s"))
    .scalar("Sz_deficit", Scalar::new(0.5 * hb - sz, "J s"))
    .scalar(
        "Sz_deficit_closed_form",
        Scalar::new(s.spin_z_deficit_closed_form(), "J s"),
    )
    .scalar(
        "Sz_deficit_over_hbar",
        Scalar::new(s.spin_z_deficit_closed_form() / hb, "1"),
    );
}

pub fn well(a: &WellArgs) -> CliResult {
    check_grid("--grid", a.grid)?;
    check_stride(a.quiver_stride, a.grid)?;
    check_order(a.order)?;
    let s = well_state("--L", a.half_width)?;
    let table = well_table(&s, a.grid)?;
    create_dir(&a.out)?;

    let mut m = ObservablesManifest::new("well", s.constants);
    m.config("L", a.half_width)
        .config("grid", a.grid)
        .config("quiver_stride", a.quiver_stride)
        .config("quadrature_order", a.order);
    well_scalars(&mut m, &s, a.order);
    emit_fields(
        &a.out,
        &table,
        &["rho_rel", "jmag"],
        a.quiver_stride,
        s.constants.e,
    )?;
    let path = a.out.join("manifest.json");
    write_manifest_file(&m, &path).map_err(io_err(&path))?;
    println!("eta = {:e}", s.eta);
    println!("wrote {}", a.out.display());
    Ok(())
}

/// field.csv, one heatmap per column and the carrier-flow quiver plot.
fn emit_fields(
    out: &Path,
    table: &wavespin_core::io::FieldTable,
    heatmaps: &[&str],
    stride: usize,
    charge: f64,
) -> CliResult {
    let path = out.join("field.csv");
    write_field_csv_file(table, &path).map_err(io_err(&path))?;
    for col in heatmaps {
        let path = out.join(format!("{col}.ppm"));
        write_heatmap_file(table, col, &path).map_err(io_err(&path))?;
    }
    // arrows follow j/e, the direction the electrons move
    let opts = QuiverOptions {
        stride,
        reverse: charge < 0.0,
    };
    let path = out.join("quiver.svg");
    write_quiver_svg_file(table, &path, &opts).map_err(io_err(&path))?;
    Ok(())
}

pub fn packet(a: &PacketArgs) -> CliResult {
    check_grid("--grid", a.grid)?;
    check_stride(a.quiver_stride, a.grid)?;
    if !(a.extent.is_finite() && a.extent > 0.0) {
        return Err(CliError::Usage(format!(
            "--extent {}: must be positive",
            a.extent
        )));
    }
    let p = packet_state(a.width)?;
    let k = p.constants;
    let table = packet_table(&p, a.time, a.grid, a.extent * a.width)?;
    create_dir(&a.out)?;

    let mut m = ObservablesManifest::new("packet", k);
    m.config("d", a.width)
        .config("t", a.time)
        .config("grid", a.grid)
        .config("extent_in_d", a.extent)
        .config("quiver_stride", a.quiver_stride);
    m.scalar(
        "t_c",
        with_reference_at(
            Scalar::new(p.decoherence_time(), "s"),
            a.width,
            1e-8,
            DECOHERENCE_10NM,
            5e-3,
        ),
    )
    .scalar("width_ratio", Scalar::new(p.width_ratio(a.time)?, "1"))
    .scalar("N", Scalar::new(p.norm, "1/(J^3 s^3)"))
    .scalar(
        "compton_wavelength",
        Scalar::new(k.compton_wavelength(), "m").with_reference(COMPTON, 1e-3),
    );
    emit_fields(&a.out, &table, &["rho_rel", "jmag"], a.quiver_stride, k.e)?;
    let path = a.out.join("manifest.json");
    write_manifest_file(&m, &path).map_err(io_err(&path))?;
    println!("t_c = {:e} s", p.decoherence_time());
    println!("width_ratio = {}", p.width_ratio(a.time)?);
    println!("wrote {}", a.out.display());
    Ok(())
}

fn random_points(
    rng: &mut ChaCha8Rng,
    n: usize,
    f: impl Fn(&mut ChaCha8Rng) -> [f64; 3],
) -> Vec<[f64; 3]> {
    (0..n).map(|_| f(rng)).collect()
}

fn report(r: &VerificationReport, manifest: &mut ObservablesManifest, out: &Path) -> CliResult {
    for c in &r.checks {
        println!(
            "{} {:<28} {:>12.4e}  (tolerance {:.1e})",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.tolerance
        );
    }
    for (key, v) in r.to_map() {
        manifest.residual(&key, v);
    }
    manifest.config("passed", r.passed());
    create_dir(out)?;
    let path = out.join("manifest.json");
    write_manifest_file(manifest, &path).map_err(io_err(&path))?;
    let failures = r.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = failures
            .iter()
            .map(|c| format!("{} = {:e} (tolerance {:e})", c.name, c.value, c.tolerance))
            .collect();
        Err(CliError::Verification(format!(
            "verification failed: {}",
            list.join("; ")
        )))
    }
}

fn check_gordon_points(n: usize) -> CliResult {
    if n < 16 {
        return Err(CliError::Usage(format!(
            "--gordon-points {n}: need at least 16"
        )));
    }
    Ok(())
}

pub fn verify_well(a: &VerifyWellArgs) -> CliResult {
    check_sweep(&a.grids)?;
    check_gordon_points(a.common.gordon_points)?;
    check_grid("--velocity-grid", a.velocity_grid)?;
    check_order(a.order)?;
    let s = well_state("--L", a.half_width)?;
    let l = s.half_width();
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let gordon = random_points(&mut rng, a.common.gordon_points, |r| {
        [
            r.random_range(-0.9 * l..0.9 * l),
            r.random_range(-0.9 * l..0.9 * l),
            0.0,
        ]
    });
    let spot = random_points(&mut rng, a.spot_points, |r| {
        [
            r.random_range(-0.99 * l..0.99 * l),
            r.random_range(-0.99 * l..0.99 * l),
            0.0,
        ]
    });
    let mut opts = WellVerifyOptions::new(&s, gordon, spot);
    opts.grids = a.grids.clone();
    opts.velocity_nodes = a.velocity_grid;
    opts.quadrature_order = a.order;
    let t = &mut opts.tolerances;
    t.order = OrderTolerance {
        expected: 2.0,
        band: a.common.tol_order,
    };
    t.eigen = a.tol_eigen;
    t.spin_squared = a.tol_spin_squared;
    t.spin_z = a.tol_spin_z;
    t.spin_deficit = a.tol_spin_deficit;
    t.divergence = a.tol_divergence;
    t.velocity = a.tol_velocity;
    t.polarization = a.tol_polarization;
    t.gordon = a.common.tol_gordon;

    let r = run_well_checks(&s, &opts)?;
    let mut m = ObservablesManifest::new("verify well", s.constants);
    m.config("L", a.half_width)
        .config("grids", json!(a.grids))
        .config("seed", a.common.seed)
        .config("gordon_points", a.common.gordon_points)
        .config("spot_points", a.spot_points)
        .config("velocity_grid", a.velocity_grid)
        .config("quadrature_order", a.order)
        .config(
            "tolerances",
            serde_json::to_value(opts.tolerances).unwrap_or(Value::Null),
        );
    well_scalars(&mut m, &s, a.order);
    report(&r, &mut m, &a.out)
}

pub fn verify_packet(a: &VerifyPacketArgs) -> CliResult {
    check_sweep(&a.grids)?;
    check_gordon_points(a.common.gordon_points)?;
    if a.nodes < 8 {
        return Err(CliError::Usage(format!(
            "--nodes {}: the oracle needs at least 8",
            a.nodes
        )));
    }
    if a.oracle_points == 0 {
        return Err(CliError::Usage("--oracle-points must be positive".into()));
    }
    let p = packet_state(a.width)?;
    let d = p.width();
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let gordon = random_points(&mut rng, a.common.gordon_points, |r| {
        std::array::from_fn(|_| r.random_range(-2.0 * d..2.0 * d))
    });
    // uniform in the ball |x| ≤ 3d by rejection
    let oracle = random_points(&mut rng, a.oracle_points, |r| loop {
        let x: [f64; 3] = std::array::from_fn(|_| r.random_range(-3.0 * d..3.0 * d));
        if x.iter().map(|v| v * v).sum::<f64>() <= 9.0 * d * d {
            break x;
        }
    });
    let mut opts = PacketVerifyOptions::new(&p, gordon, oracle);
    if let Some(t) = a.time {
        opts.time = t;
    }
    opts.grids = a.grids.clone();
    opts.oracle_nodes = a.nodes;
    let t = &mut opts.tolerances;
    t.order = OrderTolerance {
        expected: 2.0,
        band: a.common.tol_order,
    };
    t.oracle_overlap = a.tol_oracle;
    t.width_ratio = a.tol_width;
    t.second_moment = a.tol_moment;
    t.charge = a.tol_charge;
    t.gordon = a.common.tol_gordon;

    let r = run_packet_checks(&p, &opts)?;
    let mut m = ObservablesManifest::new("verify packet", p.constants);
    m.config("d", a.width)
        .config("t", opts.time)
        .config("grids", json!(a.grids))
        .config("nodes", a.nodes)
        .config("oracle_points", a.oracle_points)
        .config("seed", a.common.seed)
        .config("gordon_points", a.common.gordon_points)
        .config(
            "tolerances",
            serde_json::to_value(opts.tolerances).unwrap_or(Value::Null),
        );
    m.scalar("t_c", Scalar::new(p.decoherence_time(), "s"))
        .scalar(
            "width_ratio_t_c",
            Scalar::new(p.width_ratio(p.decoherence_time())?, "1"),
        );
    report(&r, &mut m, &a.out)
}

pub fn observables(a: &ObservablesArgs) -> CliResult {
    check_order(a.order)?;
    let s = well_state("--L", a.half_width)?;
    let mut m = ObservablesManifest::new("observables", s.constants);
    m.config("L", a.half_width)
        .config("quadrature_order", a.order);
    well_scalars(&mut m, &s, a.order);
    if a.json {
        print!("{}", m.to_canonical_string()?);
        return Ok(());
    }
    let hb = PhysicalConstants::TABLE.hbar;
    println!("L                      {:.6e} m", a.half_width);
    for (name, sc) in &m.scalars {
        let mut line = format!("{name:<24} {:>24.16e} {}", sc.value, sc.unit);
        if let Some(r) = &sc.reference {
            line.push_str(&format!(
                "  (reference {:e} ± {:.1}%)",
                r.value,
                100.0 * r.rel_tol
            ));
        }
        println!("{line}");
    }
    println!(
        "S2 / hbar^2              {:>24.16e}",
        m.scalars["S2"].value / (hb * hb)
    );
    Ok(())
}
