use serde_json::{json, Value};
use virasoro_fusion::algebra::{Partition, Rational};
use virasoro_fusion::fusion::{
    cross_validate, fusion_c1q, fusion_minimal, fusion_product_c1q, fusion_verma_mixed_with_sign,
    fusion_verma_target_zero, is_minimal_pair,
};
use virasoro_fusion::limit::{limit_check, limit_sequence};
use virasoro_fusion::three_point::{
    c1q_datum, decoupling_coefficients, evaluate_descendant, Slot,
};
use virasoro_fusion::verma::{
    central_charge_pq, kac_weight_pq, singular_vector, weight_c1q, HighestWeightParams,
    ModuleLabel, VermaVector,
};
use virasoro_fusion::zhu::{equivalence_check, singular_image};

use crate::render::{Document, Table};
use crate::{Command, FusionArgs, EXIT_DISAGREEMENT, EXIT_OK};

pub struct Outcome {
    pub document: Document,
    pub exit: i32,
}

impl From<Document> for Outcome {
    fn from(document: Document) -> Self {
        Outcome {
            document,
            exit: EXIT_OK,
        }
    }
}

type CmdResult = Result<Outcome, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn pair_json(p: (u32, u32)) -> Value {
    json!([p.0, p.1])
}

fn pair_text(p: (u32, u32)) -> String {
    format!("({},{})", p.0, p.1)
}

pub fn execute(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Weights { p, q, imax } => weights(*p, *q, *imax),
        Command::Singular { c, h, level } => singular(c, h, *level),
        Command::ZhuImage { label } => zhu_image(label),
        Command::Fusion(args) => fusion(args),
        Command::FusionProduct { q, w1, w2 } => fusion_product(*q, (*w1).into(), (*w2).into()),
        Command::Threept {
            q,
            w1,
            w2,
            w3,
            slot,
            partition,
        } => threept(*q, [(*w1).into(), (*w2).into(), (*w3).into()], *slot, partition.as_deref()),
        Command::Limit {
            q,
            w1,
            w2,
            w3,
            kmin,
            kmax,
        } => limit(*q, [(*w1).into(), (*w2).into(), (*w3).into()], *kmin, *kmax),
        Command::Verify {
            qmax,
            imax,
            sweep_qmax,
        } => verify(*qmax, *imax, *sweep_qmax),
    }
}

fn weights(p: u32, q: u32, imax: u32) -> CmdResult {
    if q == 0 || p == 0 {
        return Err("--p and --q must be positive".into());
    }
    let c = central_charge_pq(p, q);
    let (names, cells): ((&str, &str), Vec<(u32, u32)>) = if p == 1 {
        (("i", "s"), (1..=imax).flat_map(|i| (1..=q).map(move |s| (i, s))).collect())
    } else {
        if !is_minimal_pair(p, q) {
            return Err(format!("--p {p} --q {q}: minimal models need coprime p, q > 1"));
        }
        (("r", "s"), (1..p).flat_map(|r| (1..q).map(move |s| (r, s))).collect())
    };
    let mut table = Table::new(&[names.0, names.1, "h"]).titled(format!("c_({p},{q}) = {c}"));
    let mut entries = Vec::new();
    for (a, b) in cells {
        let h = kac_weight_pq(p, q, a as i64, b as i64);
        table.push(&[a.to_string(), b.to_string(), h.to_string()]);
        entries.push(json!({ names.0: a, names.1: b, "h": h }));
    }
    Ok(Document::new(json!({ "p": p, "q": q, "c": c, "weights": entries }))
        .table(table)
        .into())
}

fn vector_table(v: &VermaVector) -> Table {
    let mut t = Table::new(&["partition", "coeff"]);
    for (p, c) in v.terms() {
        let parts: Vec<String> = p.parts().iter().map(u32::to_string).collect();
        t.push(&[parts.join(" "), c.to_string()]);
    }
    t
}

fn singular(c: &Rational, h: &Rational, level: u32) -> CmdResult {
    if level == 0 {
        return Err("--level must be at least 1".into());
    }
    let params = HighestWeightParams::new(c.clone(), h.clone());
    let v = singular_vector(&params, level).map_err(err)?;
    let json = json!({ "c": c, "h": h, "level": level, "vector": v });
    let doc = match &v {
        Some(v) => Document::new(json)
            .table(vector_table(v).titled(format!("singular vector of M({c}, {h}) at level {level}")))
            .note(format!("v = {v}")),
        None => Document::new(json)
            .table(Table::new(&["partition", "coeff"]))
            .note(format!("M({c}, {h}) has no singular vector at level {level}")),
    };
    Ok(doc.into())
}

fn parse_numbers(s: &str, n: usize) -> Option<Vec<u32>> {
    let v: Vec<u32> = s.split(',').map(|t| t.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == n).then_some(v)
}

fn parse_label(s: &str) -> Result<ModuleLabel, String> {
    let bad = || format!("--label {s:?}: expected c1q:Q,I,S or min:P,Q,R,S");
    let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
    match kind {
        "c1q" => {
            let v = parse_numbers(rest, 3).ok_or_else(bad)?;
            ModuleLabel::c1q(v[0], v[1], v[2]).map_err(err)
        }
        "min" => {
            let v = parse_numbers(rest, 4).ok_or_else(bad)?;
            ModuleLabel::minimal(v[0], v[1], v[2], v[3]).map_err(err)
        }
        _ => Err(bad()),
    }
}

fn zhu_image(label: &str) -> CmdResult {
    let label = parse_label(label)?;
    let images = singular_image(&label).map_err(err)?;
    let grades = label.singular_grades();
    let mut table = Table::new(&["grade", "image"]).titled(format!(
        "{label}: c = {}, h = {}",
        label.central_charge(),
        label.weight()
    ));
    let mut entries = Vec::new();
    for (g, img) in grades.iter().zip(&images) {
        table.push(&[g.to_string(), img.poly.display_with("x", "y")]);
        entries.push(json!({ "grade": g, "image": img }));
    }
    Ok(Document::new(json!({ "label": label, "images": entries }))
        .table(table)
        .into())
}

fn fusion(a: &FusionArgs) -> CmdResult {
    let w1: (u32, u32) = a.w1.into();
    match (a.verma_h2.as_ref(), a.verma_h3.as_ref()) {
        (Some(h2), Some(h3)) => {
            if a.w2.is_some() || a.w3.is_some() || a.p.is_some() {
                return Err("--verma-h2/--verma-h3 replace --w2/--w3 and exclude --p".into());
            }
            let plus = fusion_verma_mixed_with_sign(a.q, w1, h2, h3, false).map_err(err)?;
            let minus = fusion_verma_mixed_with_sign(a.q, w1, h2, h3, true).map_err(err)?;
            let mut t = Table::new(&["N", "N (other root)"]).titled(format!(
                "N^(M({h3}))_(L(h_{}), M({h2})) at c_(1,{})",
                pair_text(w1),
                a.q
            ));
            t.push(&[plus, minus]);
            let range = "{-s+1, -s+3, ..., s-1}";
            Ok(Document::new(json!({
                "N": plus,
                "N_other_root": minus,
                "w1": pair_json(w1),
                "h2": h2,
                "h3": h3,
                "t_range": range,
            }))
            .table(t)
            .note(format!("t ranges over {range}; N uses the non-negative root s'"))
            .into())
        }
        (None, Some(h3)) => {
            let w2: (u32, u32) = a.w2.ok_or("--verma-h3 without --verma-h2 needs --w2")?.into();
            if a.w3.is_some() || a.p.is_some() {
                return Err("--verma-h3 replaces --w3 and excludes --p".into());
            }
            let n = fusion_verma_target_zero(a.q, w1, w2, h3).map_err(err)?;
            let mut t = Table::new(&["N"]).titled(format!(
                "N^(M({h3}))_(L(h_{}), L(h_{})) at c_(1,{})",
                pair_text(w1),
                pair_text(w2),
                a.q
            ));
            t.push(&[n]);
            Ok(Document::new(json!({
                "N": n, "w1": pair_json(w1), "w2": pair_json(w2), "h3": h3
            }))
            .table(t)
            .into())
        }
        (Some(_), None) => Err("--verma-h2 needs --verma-h3".into()),
        (None, None) => {
            let w2: (u32, u32) = a.w2.ok_or("missing --w2")?.into();
            let w3: (u32, u32) = a.w3.ok_or("missing --w3")?.into();
            if let Some(p) = a.p {
                let n = fusion_minimal(p, a.q, w1, w2, w3).map_err(err)?;
                let mut t = Table::new(&["N"]).titled(format!("c_({p},{})", a.q));
                t.push(&[n]);
                return Ok(Document::new(json!({ "N": n })).table(t).into());
            }
            let ans = fusion_c1q(a.q, w1, w2, w3).map_err(err)?;
            let mut t = Table::new(&["N", "witness"]).titled(format!("c_(1,{})", a.q));
            t.push(&[
                ans.value.to_string(),
                ans.witness.map(pair_text).unwrap_or_else(|| "-".into()),
            ]);
            Ok(Document::new(serde_json::to_value(&ans).map_err(err)?)
                .table(t)
                .into())
        }
    }
}

fn fusion_product(q: u32, w1: (u32, u32), w2: (u32, u32)) -> CmdResult {
    let prod = fusion_product_c1q(q, w1, w2).map_err(err)?;
    let mut t = Table::new(&["i", "s", "h"]).titled(format!(
        "L(h_{}) x L(h_{}) at c_(1,{q})",
        pair_text(w1),
        pair_text(w2)
    ));
    let mut entries = Vec::new();
    for (i, s) in prod {
        let h = weight_c1q(q, i as i64, s as i64);
        t.push(&[i.to_string(), s.to_string(), h.to_string()]);
        entries.push(json!({ "i": i, "s": s, "h": h }));
    }
    Ok(Document::new(json!({
        "q": q, "w1": pair_json(w1), "w2": pair_json(w2), "product": entries
    }))
    .table(t)
    .into())
}

fn threept(q: u32, w: [(u32, u32); 3], slot: u32, partition: Option<&[u32]>) -> CmdResult {
    let labels = w
        .iter()
        .map(|&(i, s)| ModuleLabel::c1q(q, i, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(err)?;
    let datum = c1q_datum(q, w[0], w[1], w[2]);
    let slot_e = Slot::from_index(slot).ok_or("--slot must be 1, 2 or 3")?;
    let mut rows = Vec::new();
    match partition {
        Some(parts) => {
            if parts.contains(&0) {
                return Err("--partition parts must be positive".into());
            }
            let p = Partition::from_parts(parts.to_vec());
            let v = VermaVector::monomial(datum.slot_params(slot_e), p.clone());
            let r = evaluate_descendant(&datum, slot_e, &v).map_err(err)?;
            rows.push((v.to_string(), p.size(), r.coeff, r.shift));
        }
        None => {
            for e in decoupling_coefficients(&labels[0], &labels[1], &labels[2])
                .map_err(err)?
                .into_iter()
                .filter(|e| e.slot == slot)
            {
                rows.push((format!("singular vector, grade {}", e.grade), e.grade, e.coeff, e.shift));
            }
        }
    }
    let base = datum.base_exponent();
    let mut t = Table::new(&["insertion", "grade", "coeff", "exponent"]).titled(format!(
        "c = {}, h1 = {}, h2 = {}, h3 = {}, slot {slot}",
        datum.c, datum.h1, datum.h2, datum.h3
    ));
    let mut entries = Vec::new();
    for (ins, g, coeff, shift) in rows {
        let exponent = &base - Rational::from(shift);
        t.push(&[ins.clone(), g.to_string(), coeff.to_string(), exponent.to_string()]);
        entries.push(json!({
            "insertion": ins, "grade": g, "coeff": coeff, "shift": shift, "exponent": exponent
        }));
    }
    Ok(Document::new(json!({
        "datum": datum,
        "base_exponent": base,
        "slot": slot,
        "insertions": entries,
    }))
    .table(t)
    .into())
}

fn limit(q: u32, labels: [(u32, u32); 3], kmin: u32, kmax: u32) -> CmdResult {
    let rows = limit_sequence(q, &labels, kmin, kmax).map_err(err)?;
    let report = limit_check(&rows, q, &labels).map_err(err)?;
    let mut t = Table::new(&[
        "k", "c_k", "h1^k", "h2^k", "h3^k", "allowed", "slot1 null", "c_k - c", "|null - limit|",
    ])
    .titled(format!(
        "c_(k,{q}k-1) -> c_(1,{q}) = {} for {} x {} -> {}",
        report.c_limit,
        pair_text(labels[0]),
        pair_text(labels[1]),
        pair_text(labels[2])
    ));
    for ((r, gap), nd) in rows.iter().zip(&report.c_gaps).zip(&report.null_diffs) {
        t.push(&[
            r.k.to_string(),
            r.c_k.to_string(),
            r.h1k.to_string(),
            r.h2k.to_string(),
            r.h3k.to_string(),
            r.fusion_allowed.to_string(),
            r.slot1_null_coeff.to_string(),
            gap.to_string(),
            nd.to_string(),
        ]);
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    let doc = Document::new(json!({ "rows": rows, "report": report }))
        .table(t)
        .note(format!(
            "gaps match closed forms: {}; |c_k - c| strictly decreasing: {}",
            yes(report.gaps_match_closed_form),
            yes(report.c_gap_strictly_decreasing)
        ))
        .note(format!(
            "eventual fusion: {}; c_(1,{q}) closed form: {}",
            report.eventual_fusion as u8, report.oracle_fusion
        ))
        .note(format!(
            "slot-1 null coefficient at c_(1,{q}): {}; differences non-increasing: {}",
            report.null_target,
            yes(report.null_diffs_non_increasing)
        ));
    Ok(doc.into())
}

fn verify(qmax: u32, imax: u32, sweep_qmax: u32) -> CmdResult {
    if qmax == 0 || imax == 0 {
        return Err("--qmax and --imax must be positive".into());
    }
    let report = cross_validate(qmax, imax).map_err(err)?;
    let mut sweep_points = 0usize;
    let mut sweep_failures = Vec::new();
    for q in 1..=sweep_qmax {
        let smax = q.min(3);
        for i1 in 1..=3 {
            for s1 in 1..=smax {
                for i2 in 1..=3 {
                    for s2 in 1..=smax {
                        for i3 in 1..=7i64 {
                            for s3 in 1..=q as i64 {
                                let h3 = weight_c1q(q, i3, s3);
                                sweep_points += 1;
                                if !equivalence_check(q, i1, s1, i2, s2, &h3).map_err(err)? {
                                    sweep_failures.push(json!({
                                        "q": q, "w1": [i1, s1], "w2": [i2, s2], "w3": [i3, s3]
                                    }));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut t = Table::new(&["q", "w1", "w2", "w3", "closed form", "bimodule bound", "decoupling"])
        .titled("disagreements");
    for d in &report.disagreements {
        t.push(&[
            d.q.to_string(),
            pair_text(d.w1),
            pair_text(d.w2),
            pair_text(d.w3),
            d.closed_form.to_string(),
            d.fz_bound.to_string(),
            d.decoupling.to_string(),
        ]);
    }
    let ok = report.disagreements.is_empty() && sweep_failures.is_empty();
    let doc = Document::new(json!({
        "cross_validation": report,
        "equivalence_sweep": { "points": sweep_points, "failures": sweep_failures },
    }))
    .table(t)
    .note(format!(
        "cross-validation (q <= {qmax}, i <= {imax}): {} triples, {} allowed, {} disagreements",
        report.triples_checked,
        report.allowed,
        report.disagreements.len()
    ))
    .note(format!(
        "equivalence sweep (q <= {sweep_qmax}): {sweep_points} points, {} failures",
        sweep_failures.len()
    ));
    Ok(Outcome {
        document: doc,
        exit: if ok { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}
