use bellgraph::bell::*;
use bellgraph::fixtures::{optimized_pauli24, pauli24_rays};
use bellgraph::gilbert::*;
use bellgraph::simplex::rational;

fn main() {
    let t0 = std::time::Instant::now();
    let vs = pauli24_rays();
    let g = vs.orthogonality_graph(0.0).unwrap();
    let group = bellgraph::aut::automorphism_group(&g).unwrap();
    let ctx = SymmetryContext::new(group, true).unwrap();
    println!("classes: {} (orbit params {}) in {:?}", ctx.classes.len(), ctx.orbits.orbit_count(), t0.elapsed());

    let f = optimized_pauli24();
    let t = std::time::Instant::now();
    let bound = f.local_bound_classes(&ctx.class_masks());
    println!("class-reduced bound = {} in {:?}", bound.value, t.elapsed());

    let q = CorrelationPoint::quantum(&vs);
    // certification at W = 7/9
    let t = std::time::Instant::now();
    let q79 = q.apply_werner(&rational(7, 9)).unwrap();
    let cert = certify_lp(&q79, &f, &ctx, 30).unwrap();
    println!("W=7/9: pairs={} matrices={} feasible={} in {:?}", cert.optimal_pair_count, cert.class_matrix_count, cert.feasible, t.elapsed());

    let qeta = q.apply_detection(&rational(4, 5)).unwrap();
    let cert2 = certify_lp(&qeta, &f, &ctx, 30).unwrap();
    println!("eta=4/5: feasible={}", cert2.feasible);

    let above = rational(7, 9) + rational(1, 1000000);
    let qab = q.apply_werner(&above).unwrap();
    let cert3 = certify_lp(&qab, &f, &ctx, 30).unwrap();
    println!("W=7/9+1e-6: feasible={}", cert3.feasible);

    // gilbert on the clean point
    let t = std::time::Instant::now();
    let qv = point_to_f64(&q);
    for iters in [200u64, 1000, 5000, 20000] {
        let out = gilbert_run(&qv, &ctx, &GilbertConfig { max_iter: iters, tol: 1e-10 });
        let sep = extract_inequality(&q, &out, &ctx);
        match sep {
            Ok(sep) => {
                let report = efficiency_report(&sep.functional, &sep.local_bound, &q, None);
                let eta = report.eta_crit.as_ref().map(|e| e.to_f64());
                let w = report.w_crit.as_ref().map(|e| e.to_f64());
                println!("iters {} (did {} cv={}): dist {:.6} cap {} eta {:?} w {:?} ({:?})",
                    iters, out.iterations, out.converged, out.distance, sep.denominator_cap, eta, w, t.elapsed());
            }
            Err(e) => println!("iters {}: extraction failed: {e}", iters),
        }
    }
}
