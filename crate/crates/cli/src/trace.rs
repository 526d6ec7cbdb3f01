use std::io::Write;
use std::path::Path;

use eqlab::dynamics::Trace;
use eqlab::games::MixedStrategy;

pub const TRACE_HEADER: [&str; 6] = ["step", "player", "strategy", "played", "expected_payoff", "regret"];

fn probs(s: &MixedStrategy) -> String {
    s.probs().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

/// Two rows per step, Alice first. Probabilities are space-separated.
pub fn write_trace_csv<W: Write>(trace: &Trace, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRACE_HEADER)?;
    for s in &trace.steps {
        let t = s.t.to_string();
        let rows = [
            ("0", &s.x, s.x_played, &s.row_payoff, &s.row_regret),
            ("1", &s.y, s.y_played, &s.column_payoff, &s.column_regret),
        ];
        for (player, strat, played, payoff, regret) in rows {
            let played = played.map(|i| i.to_string()).unwrap_or_default();
            w.write_record([
                t.as_str(),
                player,
                &probs(strat),
                &played,
                &payoff.to_string(),
                &regret.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn emit_trace_csv(trace: &Trace, path: &Path) -> csv::Result<()> {
    let f = std::fs::File::create(path)?;
    write_trace_csv(trace, f)
}
