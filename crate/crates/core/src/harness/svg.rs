use std::fmt::Write;

use super::{CellSummary, ScenarioKind, StrategyKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPoint {
    pub scenario: ScenarioKind,
    pub n: usize,
    pub strategy: StrategyKind,
    pub value: f64,
}

const PANEL_W: f64 = 380.0;
const PANEL_H: f64 = 300.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

fn color(s: StrategyKind) -> &'static str {
    match s {
        StrategyKind::Maximal => "#1f77b4",
        StrategyKind::Uniform => "#ff7f0e",
        StrategyKind::Ege => "#2ca02c",
    }
}

struct Axes {
    x0: f64,
    n_min: f64,
    n_max: f64,
    dec_min: i32,
    dec_max: i32,
}

impl Axes {
    fn x(&self, n: usize) -> f64 {
        let w = PANEL_W - LEFT - RIGHT;
        if self.n_max <= self.n_min {
            return self.x0 + LEFT + w / 2.0;
        }
        let f = ((n as f64).ln() - self.n_min.ln()) / (self.n_max.ln() - self.n_min.ln());
        self.x0 + LEFT + f * w
    }

    fn y(&self, v: f64) -> f64 {
        let h = PANEL_H - TOP - BOTTOM;
        let f = (v.max(1.0).log10() - f64::from(self.dec_min)) / f64::from(self.dec_max - self.dec_min);
        TOP + (1.0 - f) * h
    }
}

/// Mean plays against `n`, one panel per scenario, log-scaled y with
/// min/max whiskers; bounds, when given, are drawn dashed in the strategy's
/// colour.
pub fn render_svg(cells: &[CellSummary], bounds: &[BoundPoint]) -> String {
    let mut scenarios: Vec<ScenarioKind> = cells.iter().map(|c| c.scenario).collect();
    scenarios.sort();
    scenarios.dedup();
    let width = PANEL_W * scenarios.len().max(1) as f64;
    let height = PANEL_H + 30.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (p, &scenario) in scenarios.iter().enumerate() {
        let mine: Vec<&CellSummary> = cells.iter().filter(|c| c.scenario == scenario).collect();
        let my_bounds: Vec<&BoundPoint> = bounds.iter().filter(|b| b.scenario == scenario).collect();
        let ns = mine.iter().map(|c| c.n as f64);
        let values = mine
            .iter()
            .flat_map(|c| [c.min_plays as f64, c.max_plays as f64, c.mean_plays])
            .chain(my_bounds.iter().map(|b| b.value))
            .filter(|v| v.is_finite() && *v > 0.0);
        let (lo, hi) = values.fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let (mut dec_min, mut dec_max) = if hi > 0.0 {
            (lo.max(1.0).log10().floor() as i32, hi.max(1.0).log10().ceil() as i32)
        } else {
            (0, 1)
        };
        if dec_max <= dec_min {
            dec_max = dec_min + 1;
        }
        dec_min = dec_min.min(dec_max - 1);
        let axes = Axes {
            x0: PANEL_W * p as f64,
            n_min: ns.clone().fold(f64::INFINITY, f64::min),
            n_max: ns.fold(0.0, f64::max),
            dec_min,
            dec_max,
        };

        let (left, right) = (axes.x0 + LEFT, axes.x0 + PANEL_W - RIGHT);
        let (top, bottom) = (TOP, PANEL_H - BOTTOM);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="13">{}</text>"#,
            (left + right) / 2.0,
            scenario
        );
        let _ = writeln!(
            out,
            r##"<rect x="{left:.1}" y="{top:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="#444"/>"##,
            right - left,
            bottom - top
        );
        for d in dec_min..=dec_max {
            let y = axes.y(10f64.powi(d));
            let _ = writeln!(
                out,
                r##"<line x1="{left:.1}" y1="{y:.1}" x2="{right:.1}" y2="{y:.1}" stroke="#ddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">1e{d}</text>"##,
                left - 6.0,
                y + 4.0
            );
        }
        let mut grid: Vec<usize> = mine.iter().map(|c| c.n).collect();
        grid.sort_unstable();
        grid.dedup();
        for &n in &grid {
            let x = axes.x(n);
            let _ = writeln!(
                out,
                r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{n}</text>"#,
                bottom + 16.0
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">number of arms</text>"#,
            (left + right) / 2.0,
            bottom + 34.0
        );

        for strategy in StrategyKind::ALL {
            let c = color(strategy);
            let series: Vec<&&CellSummary> = mine.iter().filter(|s| s.strategy == strategy).collect();
            if !series.is_empty() {
                let pts: Vec<String> = series
                    .iter()
                    .map(|s| format!("{:.1},{:.1}", axes.x(s.n), axes.y(s.mean_plays)))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{c}" stroke-width="2"/>"#,
                    pts.join(" ")
                );
                for s in &series {
                    let x = axes.x(s.n);
                    let _ = writeln!(
                        out,
                        r#"<line x1="{x:.1}" y1="{:.1}" x2="{x:.1}" y2="{:.1}" stroke="{c}"/><circle cx="{x:.1}" cy="{:.1}" r="3" fill="{c}"/>"#,
                        axes.y(s.min_plays as f64),
                        axes.y(s.max_plays as f64),
                        axes.y(s.mean_plays)
                    );
                }
            }
            let mut overlay: Vec<&&BoundPoint> = my_bounds.iter().filter(|b| b.strategy == strategy).collect();
            overlay.sort_by_key(|b| b.n);
            if !overlay.is_empty() {
                let pts: Vec<String> = overlay
                    .iter()
                    .map(|b| format!("{:.1},{:.1}", axes.x(b.n), axes.y(b.value)))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{c}" stroke-dasharray="5,4"/>"#,
                    pts.join(" ")
                );
            }
        }
    }

    for (k, strategy) in StrategyKind::ALL.iter().enumerate() {
        let x = 20.0 + 110.0 * k as f64;
        let y = height - 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"/><text x="{}" y="{}">{strategy}</text>"#,
            x + 20.0,
            color(*strategy),
            x + 25.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{:.1}" y="{:.1}" text-anchor="end" fill="#666">dashed: bound (constant 1)</text>"##,
        width - 10.0,
        height - 8.0
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(scenario: ScenarioKind, n: usize, strategy: StrategyKind, mean: f64) -> CellSummary {
        CellSummary {
            scenario,
            n,
            strategy,
            trials: 3,
            mean_plays: mean,
            min_plays: (mean * 0.5) as u64,
            max_plays: (mean * 2.0) as u64,
            mean_plays_total: mean,
            errors: 0,
            failures: 0,
        }
    }

    #[test]
    fn one_panel_per_scenario() {
        let cells = vec![
            cell(ScenarioKind::OneSparse, 10, StrategyKind::Uniform, 1e4),
            cell(ScenarioKind::OneSparse, 20, StrategyKind::Uniform, 3e4),
            cell(ScenarioKind::Increasing, 10, StrategyKind::Ege, 2e5),
        ];
        let bounds = vec![BoundPoint {
            scenario: ScenarioKind::OneSparse,
            n: 10,
            strategy: StrategyKind::Uniform,
            value: 5e3,
        }];
        let svg = render_svg(&cells, &bounds);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains(">one-sparse<"));
        assert!(svg.contains(">increasing<"));
        assert!(!svg.contains(">decreasing<"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn single_point_panel_is_finite() {
        let svg = render_svg(&[cell(ScenarioKind::Decreasing, 5, StrategyKind::Maximal, 0.0)], &[]);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
