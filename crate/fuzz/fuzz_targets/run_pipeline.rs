//! Fuzzes the full pipeline: any parsed instance small enough to afford an
//! exact optimum is run through every algorithm and stream order policy,
//! then structurally validated and audited. Any violated invariant or
//! inequality panics and becomes a finding.

#![no_main]

use libfuzzer_sys::fuzz_target;

use streammatch::audit::audit_run;
use streammatch::check::validate_run;
use streammatch::exact::max_matching;
use streammatch::{make_order, run_multi_pass, AlgoId, OrderPolicy};

fuzz_target!(|data: &[u8]| {
    let Some((&seed_byte, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let Ok(inst) = streammatch::parse_instance(text) else {
        return;
    };
    if inst.vertex_count() > 64 || inst.edge_count() > 256 {
        return;
    }
    let mstar = max_matching(&inst.graph);
    let triangle_free = !inst.graph.contains_triangle();
    let policy =
        [OrderPolicy::File, OrderPolicy::Reverse, OrderPolicy::Random][(seed_byte % 3) as usize];
    let order = make_order(inst.edge_count(), policy, seed_byte as u64);
    for algo in AlgoId::ALL {
        if algo == AlgoId::WingTf && !triangle_free {
            continue;
        }
        let run = run_multi_pass(algo, &inst, &order).expect("run succeeds within memory cap");
        if let Err(msg) = validate_run(&run, &inst) {
            panic!("{}: structural violation: {msg}", algo.name());
        }
        let report = audit_run(&run, &mstar).expect("artifacts are classifiable");
        for r in &report.records {
            assert!(
                r.holds,
                "{}: inequality {} violated ({} vs {})",
                algo.name(),
                r.id,
                r.lhs,
                r.rhs
            );
        }
        let (num, den) = algo.guarantee();
        assert!(
            den * run.output.len() as i64 >= num * mstar.len() as i64,
            "{}: certified ratio violated",
            algo.name()
        );
    }
});
