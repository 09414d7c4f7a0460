use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use polycox::artin::{artin_coherent_with, cell_census};
use polycox::completion::{homotopical_complete_with, Budgets, NormalFormResolver};
use polycox::coxeter::{enumerate, CoxeterGroup, CoxeterMatrix};
use polycox::garside::{complete_garside_with, garside_presentation, garside_reduction_part, Family};
use polycox::json::{
    parse_coxeter, parse_part, parse_polygraph2, parse_polygraph31, part_to_json, polygraph31_to_json, report_to_doc,
};
use polycox::tietze::homotopical_reduce_full;
use polycox::{Error, Polygraph2, Polygraph31, TerminationOrder};
use serde_json::json;

use crate::{Cli, Command, Common, Cosets, Failure, MatrixInput, Stage};

type Outcome = Result<(), Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let say = |line: String| {
        if !cli.quiet {
            eprintln!("{line}");
        }
    };
    match &cli.command {
        Command::Complete { input, order, budget_rules, budget_branchings, common } => {
            apply_step_budget(common);
            let p = parse_polygraph2(&read(input)?)?;
            let order = parse_order(&p, order)?;
            let budgets = Budgets { max_rules: *budget_rules as usize, max_branchings: *budget_branchings as usize };
            let c = homotopical_complete_with(&p, &order, &mut NormalFormResolver::default(), budgets)?;
            write(common, &polygraph31_to_json(&c.result))?;
            say(format!("rules added: {}", c.added_rules.len()));
            for &r in &c.added_rules {
                say(format!("  {}", c.result.base.display_rule(r)));
            }
            say(format!("3-cells: {}", c.result.cells.len()));
            say(format!("branchings: {}", c.processed));
        }
        Command::Reduce { input, part, report, common } => {
            apply_step_budget(common);
            let p = parse_polygraph31(&read(input)?)?;
            let g = parse_part(&p, &read(part)?)?;
            let r = homotopical_reduce_full(&p, &g)?;
            write(common, &polygraph31_to_json(&r.result))?;
            if let Some(path) = report {
                let doc = serde_json::to_string_pretty(&report_to_doc(&r.report)).expect("documents serialize");
                write_file(path, &doc)?;
            }
            let rep = &r.report;
            say(format!(
                "removed: {} generators, {} rules, {} 3-cells",
                rep.removed_generators.len(),
                rep.removed_rules.len(),
                rep.removed_cells.len()
            ));
            say(format!(
                "surviving: {} generators, {} rules, {} 3-cells",
                rep.surviving_generators.len(),
                rep.surviving_rules.len(),
                rep.surviving_cells.len()
            ));
            for rule in 0..r.result.base.rules.len() {
                say(format!("  {}", r.result.base.display_rule(rule)));
            }
        }
        Command::Garside { matrix, stage, part_out, cosets, common } => {
            if part_out.is_some() && *stage != Stage::Completed {
                return Err(Error::Precondition("--part-out requires --stage completed".into()).into());
            }
            apply_step_budget(common);
            let g = group(matrix, cosets)?;
            let out = match stage {
                Stage::Raw => Polygraph31::new(garside_presentation(&g).base),
                Stage::Completed | Stage::Reduced => {
                    let budgets = Budgets { max_rules: usize::MAX, max_branchings: usize::MAX };
                    let mut c = complete_garside_with(&g, budgets)?;
                    let part = garside_reduction_part(&c)?;
                    if *stage == Stage::Reduced {
                        homotopical_reduce_full(&c.p31, &part)?.result
                    } else {
                        if let Some(path) = part_out {
                            write_file(path, &part_to_json(&c.p31, &part))?;
                        }
                        let census: Vec<String> =
                            Family::ALL.iter().map(|&f| format!("{f}={}", c.count(f))).collect();
                        c.p31.meta.insert("families".into(), census.join(","));
                        c.p31
                    }
                }
            };
            write(common, &polygraph31_to_json(&out))?;
            say(format!("order of W: {}", g.size()));
            say(format!("generators: {}", out.base.generators.len()));
            say(format!("rules: {}", out.base.rules.len()));
            say(format!("3-cells: {}", out.cells.len()));
        }
        Command::Artin { matrix, cosets, common } => {
            apply_step_budget(common);
            let m = load_matrix(matrix)?;
            let p = artin_coherent_with(&m, cosets.budget_cosets as usize)?;
            write(common, &polygraph31_to_json(&p))?;
            let census = cell_census(&p).map(|c| c.to_string());
            say(census.join(","));
        }
        Command::Coxeter { matrix, cosets, common } => {
            apply_step_budget(common);
            let g = group(matrix, cosets)?;
            let mut elements: Vec<usize> = (0..g.size()).collect();
            elements.sort_by_key(|&u| (g.length(u), g.word(u).to_vec()));
            let doc = json!({
                "generators": g.matrix.generators,
                "order": g.size(),
                "longest_element": g.name(g.w0()),
                "longest_length": g.length(g.w0()),
                "elements": elements.iter().map(|&u| g.name(u)).collect::<Vec<_>>(),
            });
            write(common, &serde_json::to_string_pretty(&doc).expect("documents serialize"))?;
            say(format!("order: {}", g.size()));
            say(format!("longest element: {} (length {})", g.name(g.w0()), g.length(g.w0())));
        }
    }
    Ok(())
}

/// `--budget-steps` applies unless POLYCOX_BUDGET_STEPS is already set.
fn apply_step_budget(common: &Common) {
    if let Some(n) = common.budget_steps {
        if std::env::var_os("POLYCOX_BUDGET_STEPS").is_none() {
            // Single-threaded at this point: nothing else reads the environment.
            std::env::set_var("POLYCOX_BUDGET_STEPS", n.to_string());
        }
    }
}

/// Parses `deglex` or `deglex:x,y,z` (greatest first).
pub fn parse_order(p: &Polygraph2, spec: &str) -> polycox::Result<TerminationOrder> {
    let spec = spec.trim();
    match spec.split_once(':') {
        None if spec == "deglex" => Ok(TerminationOrder::deglex_by_index(p.generators.len())),
        Some(("deglex", list)) => {
            let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            TerminationOrder::deglex(p, &names)
        }
        _ => Err(Error::Input(format!("unknown order {spec:?}; expected deglex or deglex:<generators>"))),
    }
}

fn load_matrix(m: &MatrixInput) -> Result<CoxeterMatrix, Failure> {
    match (&m.matrix, &m.coxeter_type) {
        (Some(path), _) => Ok(parse_coxeter(&read(path)?)?),
        (None, Some(t)) => Ok(CoxeterMatrix::from_type(t)?),
        (None, None) => Err(Error::Input("no Coxeter matrix given".into()).into()),
    }
}

fn group(m: &MatrixInput, cosets: &Cosets) -> Result<CoxeterGroup, Failure> {
    Ok(enumerate(&load_matrix(m)?, cosets.budget_cosets as usize)?)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write_file(path: &PathBuf, text: &str) -> Outcome {
    fs::write(path, format!("{text}\n")).map_err(|e| Failure::Io(path.clone(), e))
}

fn write(common: &Common, text: &str) -> Outcome {
    match &common.out {
        Some(path) => write_file(path, text),
        None => {
            // A closed pipe (`polycox ... | head`) is not an error.
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Io("<stdout>".into(), e)),
                _ => Ok(()),
            }
        }
    }
}
