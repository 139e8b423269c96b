//! Experiment catalog, configuration text, run orchestration and output
//! files.

mod config;
mod output;

pub use config::{
    parse_config, parse_pairs, Equation, FourierResolution, Preset, Scenario, ScenarioId, SolverKind, CONFIG_KEYS,
};
pub use output::{
    compare_outputs, compare_runs, compare_snapshots, load_run, read_snapshots, run, simulate, write_outputs,
    write_snapshots, CompareWindow, Comparison, RunManifest, RunStatus, RunSummary, StoredRun, COEFFICIENTS_FILE,
    DIAGNOSTICS_FILE, MANIFEST_FILE, SNAPSHOTS_FILE,
};

/// One line of the catalog.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct CatalogEntry {
    pub id: ScenarioId,
    pub figures: &'static str,
    pub solver: SolverKind,
    pub initial_data: &'static str,
}

pub fn list_scenarios() -> Vec<CatalogEntry> {
    ScenarioId::ALL
        .into_iter()
        .map(|id| CatalogEntry { id, figures: id.figures(), solver: id.default_solver(), initial_data: id.initial_data() })
        .collect()
}

/// Catalog as aligned text, one scenario per line.
pub fn catalog_text() -> String {
    let mut s = String::new();
    for e in list_scenarios() {
        let solver = match e.solver {
            SolverKind::Fourier => "fourier",
            SolverKind::Chebyshev => "chebyshev",
        };
        s.push_str(&format!("{:<15} {:<12} {:<10} {}\n", e.id.as_str(), e.figures, solver, e.initial_data));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_nine_entries_with_solvers() {
        let c = list_scenarios();
        assert_eq!(c.len(), 9);
        let e = c.iter().find(|e| e.id == ScenarioId::NlSigma09Tm1).unwrap();
        assert_eq!(e.initial_data, "u(x,-1)=0.9u_{Per}(x,-1)");
        assert_eq!(e.figures, "Figs. 16-17");
        let text = catalog_text();
        assert_eq!(text.lines().count(), 9);
        assert!(text.lines().all(|l| l.contains("fourier") || l.contains("chebyshev")));
    }
}
