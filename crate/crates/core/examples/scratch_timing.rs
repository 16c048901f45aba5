// Temporary sizing scratchpad; removed before shipping.
use std::time::Instant;

use chordal_extend::caps::Caps;
use chordal_extend::cayley::{self, Window};
use chordal_extend::cmat::CMatrix;
use chordal_extend::extend::{self, PdFunctionData};
use chordal_extend::groups::{GroupElement, GroupKind, GroupSpec, Morphism, SymmetricSet};
use num_complex::Complex64;

fn autocorrelation_data(
    spec: &GroupSpec,
    set: &SymmetricSet,
    d: usize,
    support_radius: u32,
    seed: u64,
) -> PdFunctionData {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let caps = Caps::default();
    let support = cayley::ball(spec, support_radius, &caps).unwrap();
    let coeffs: Vec<CMatrix> = support
        .elements()
        .iter()
        .map(|_| {
            let mut m = CMatrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    m[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            m
        })
        .collect();
    let phi = |x: &GroupElement| -> CMatrix {
        let mut acc = CMatrix::zeros(d, d);
        for (y, c) in support.elements().iter().zip(&coeffs) {
            let yx = spec.multiply(y, x).unwrap();
            if let Some(idx) = support.index_of(&yx) {
                acc = acc.add(&c.adjoint().mul(&coeffs[idx]));
            }
        }
        acc
    };
    let mut data = PdFunctionData::new(spec.clone(), set.clone(), d)
        .unwrap()
        .with_default(CMatrix::zeros(d, d))
        .unwrap();
    // Values on S within a generous ball: autocorrelation support is
    // ball(2 * support_radius).
    let values_window = cayley::ball(spec, 2 * support_radius, &caps).unwrap();
    for x in values_window.elements() {
        if set.contains(spec, x).unwrap() {
            data.set_value(x.clone(), phi(x)).unwrap();
        }
    }
    data
}

fn main() {
    let caps = Caps::default();

    // 1. certify_z2 timing.
    let t = Instant::now();
    let cert = extend::certify_z2_counterexample(1e-9, &caps).unwrap();
    println!(
        "certify_z2: {:?} (cliques {}, contradiction {})",
        t.elapsed(),
        cert.verification.clique_count,
        cert.contradiction
    );

    // 2. dihedral fixture.
    let spec = GroupSpec::new(GroupKind::InfiniteDihedral).unwrap();
    let set = SymmetricSet::LengthBall { n: 2 };
    let data = autocorrelation_data(&spec, &set, 2, 2, 7);
    let t = Instant::now();
    let report = extend::extension_report(
        &data,
        &[11],
        &[2, 4, 8],
        &[GroupElement::Word("aba".into())],
        42,
        1e-9,
        &caps,
    )
    .unwrap();
    println!("dihedral report: {:?}", t.elapsed());
    for cell in &report.cells {
        println!(
            "  N={} window={} gram_min={:.3e} dev={:.3e}",
            cell.folner_n, cell.window_size, cell.gram_min_eigenvalue, cell.max_deviation_on_s
        );
    }

    // 3. Z strip fixture.
    let spec = GroupSpec::new(GroupKind::IntLattice(1)).unwrap();
    let set = SymmetricSet::Strip {
        morphism: Morphism::Lattice(vec![1.0]),
        bound: 2.0,
    };
    let mut data = PdFunctionData::new(spec.clone(), set, 1).unwrap();
    data.set_value(GroupElement::Lattice(vec![0]), CMatrix::from_real(&[&[1.0]]))
        .unwrap();
    data.set_value(GroupElement::Lattice(vec![1]), CMatrix::from_real(&[&[0.5]]))
        .unwrap();
    let t = Instant::now();
    let report = extend::extension_report(
        &data,
        &[11],
        &[2, 4, 8],
        &[GroupElement::Lattice(vec![3])],
        42,
        1e-9,
        &caps,
    )
    .unwrap();
    println!("z strip report: {:?}", t.elapsed());
    for cell in &report.cells {
        println!(
            "  N={} window={} gram_min={:.3e} dev={:.3e}",
            cell.folner_n, cell.window_size, cell.gram_min_eigenvalue, cell.max_deviation_on_s
        );
    }

    // 4. Heisenberg strip: union window sizing.
    let spec = GroupSpec::new(GroupKind::Heisenberg).unwrap();
    let set = SymmetricSet::Strip {
        morphism: Morphism::Heisenberg { alpha: 1.0, beta: 1.0 },
        bound: 2.0,
    };
    for n in [1u32, 2] {
        let folner = cayley::folner_set(&spec, n).unwrap();
        let mut maxlen = 0;
        for y in &folner.elements {
            maxlen = maxlen.max(cayley::word_length(&spec, y).unwrap());
        }
        println!("heisenberg F({n}): {} elements, maxlen {}", folner.elements.len(), maxlen);

        // Targets: identity, one strip element, one off-strip element.
        let targets = vec![
            GroupElement::Heisenberg(0, 1, 0),
            GroupElement::Heisenberg(1, 1, 0),
            GroupElement::Heisenberg(0, 0, 1),
        ];
        let mut quotients: Vec<GroupElement> = vec![spec.identity()];
        for a in &targets {
            quotients.push(a.clone());
            quotients.push(spec.inverse(a).unwrap());
            for b in &targets {
                let q = spec.multiply(&spec.inverse(a).unwrap(), b).unwrap();
                quotients.push(q);
            }
        }
        let mut elems: Vec<GroupElement> = Vec::new();
        for y in &folner.elements {
            for q in &quotients {
                elems.push(spec.multiply(y, q).unwrap());
            }
            elems.push(y.clone());
        }
        let window = Window::from_elements(&spec, elems).unwrap();
        println!("  union window: {} vertices", window.len());

        let data = autocorrelation_data(&spec, &set, 1, 1, 11);
        let t = Instant::now();
        let kernel = extend::extend_on_given_window(&data, &window, 1e-9, &caps);
        match kernel {
            Ok(k) => {
                println!("  completion: {:?} ({} x {})", t.elapsed(), k.rows(), k.cols());
                let t = Instant::now();
                let cell = extend::report_cell(
                    &data, &window, &k, &folner, 0, &targets, 42, 1e-9,
                )
                .unwrap();
                println!(
                    "  cell: {:?} gram_min={:.3e} dev={:.3e}",
                    t.elapsed(),
                    cell.gram_min_eigenvalue,
                    cell.max_deviation_on_s
                );
            }
            Err(e) => println!("  completion error: {e}"),
        }
    }
}
