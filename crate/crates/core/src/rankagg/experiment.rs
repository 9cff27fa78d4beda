use serde::Serialize;

use super::data::generate;
use super::kendall::kendall_tau;
use super::rank::{rank, Method, DEFAULT_BETA};
use super::true_order;
use crate::error::{Error, Result};
use crate::par::Exec;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentParams {
    pub n: usize,
    pub sigma: f64,
    pub ps: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    pub beta: f64,
}

impl Default for ExperimentParams {
    fn default() -> Self {
        ExperimentParams {
            n: 100,
            sigma: 1.0,
            ps: vec![0.03, 0.05, 0.07],
            trials: 30,
            seed: 42,
            beta: DEFAULT_BETA,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub method: Method,
    pub p: f64,
    pub trial: usize,
    pub tau_weighted: f64,
    pub tau_unweighted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub method: Method,
    pub p: f64,
    pub trials: usize,
    pub mean_tau_weighted: f64,
    pub std_tau_weighted: f64,
    pub mean_tau_unweighted: f64,
    pub std_tau_unweighted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub params: ExperimentParams,
    pub rows: Vec<TrialRow>,
    pub summary: Vec<MethodSummary>,
}

impl ExperimentResult {
    /// `method,p,trial,tau_weighted,tau_unweighted`, one row per trial and
    /// method, ordered by p, then trial, then method.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,p,trial,tau_weighted,tau_unweighted\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.method.tag(),
                r.p,
                r.trial,
                r.tau_weighted,
                r.tau_unweighted
            ));
        }
        out
    }

    pub fn summary_for(&self, method: Method, p: f64) -> Option<&MethodSummary> {
        self.summary.iter().find(|s| s.method == method && s.p == p)
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Run every method on `trials` generated datasets per `p`. Trial `i` uses
/// seed `seed + i`; trials are independent and run under `exec`.
pub fn experiment(params: &ExperimentParams, exec: Exec) -> Result<ExperimentResult> {
    if params.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if params.ps.is_empty() {
        return Err(Error::InvalidParameter("no p values given".into()));
    }
    let truth = true_order(params.n);
    let jobs: Vec<(f64, usize)> = params
        .ps
        .iter()
        .flat_map(|&p| (0..params.trials).map(move |t| (p, t)))
        .collect();
    let per_job = exec.map_slice(&jobs, |&(p, trial)| -> Result<Vec<TrialRow>> {
        let data = generate(params.n, params.sigma, p, params.seed.wrapping_add(trial as u64))?;
        Method::ALL
            .iter()
            .map(|&method| {
                let r = rank(method, &data, params.beta)?;
                Ok(TrialRow {
                    method,
                    p,
                    trial,
                    tau_weighted: kendall_tau(&r.order, &truth, true)?,
                    tau_unweighted: kendall_tau(&r.order, &truth, false)?,
                })
            })
            .collect()
    });
    let mut rows = Vec::with_capacity(jobs.len() * Method::ALL.len());
    for job in per_job {
        rows.extend(job?);
    }
    let mut summary = Vec::new();
    for &p in &params.ps {
        for method in Method::ALL {
            let (w, u): (Vec<f64>, Vec<f64>) = rows
                .iter()
                .filter(|r| r.method == method && r.p == p)
                .map(|r| (r.tau_weighted, r.tau_unweighted))
                .unzip();
            let (mean_w, std_w) = mean_std(&w);
            let (mean_u, std_u) = mean_std(&u);
            summary.push(MethodSummary {
                method,
                p,
                trials: w.len(),
                mean_tau_weighted: mean_w,
                std_tau_weighted: std_w,
                mean_tau_unweighted: mean_u,
                std_tau_unweighted: std_u,
            });
        }
    }
    Ok(ExperimentResult {
        params: params.clone(),
        rows,
        summary,
    })
}
