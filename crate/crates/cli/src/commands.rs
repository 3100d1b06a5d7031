use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use morita_core::cochain::CircleCochain;
use morita_core::cohomology::{aut_orbits, Limits, Workspace};
use morita_core::error::{Error, Result};
use morita_core::group::finite::GroupJson;
use morita_core::group::{catalog, extension_class, FiniteGroup};
use morita_core::lhs::{d2_summary, e2_cell, omega_membership};
use morita_core::morita::datum::transport_to_catalog;
use morita_core::morita::{
    check_equivalence, classify, DualityDatum, MoritaDatabase, OrbitCache, PointedCategoryNode,
};

/// What a command hands back to main: the JSON twin, the rendered table,
/// and the process exit code (0 ok, 2 negative verdict).
pub struct Outcome {
    pub json: Value,
    pub table: String,
    pub exit: i32,
}

fn ok(json: Value, table: String) -> Outcome {
    Outcome {
        json,
        table,
        exit: 0,
    }
}

pub fn resolve_group(selector: &str) -> Result<Arc<FiniteGroup>> {
    if let Some(entry) = catalog().by_key(selector) {
        return Ok(entry.group.clone());
    }
    let text = std::fs::read_to_string(selector)
        .map_err(|e| Error::BadInput(format!("'{selector}' is not a catalog key or readable file: {e}")))?;
    let parsed: GroupJson = serde_json::from_str(&text)
        .map_err(|e| Error::BadInput(format!("bad group JSON in {selector}: {e}")))?;
    Ok(Arc::new(FiniteGroup::from_json(&parsed)?))
}

pub fn parse_elements(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| Error::BadInput(format!("bad element index '{p}'")))
        })
        .collect()
}

pub fn parse_coords(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::BadInput(format!("bad coordinate '{p}'")))
        })
        .collect()
}

pub fn parse_node(s: &str) -> Result<PointedCategoryNode> {
    let (key, coords) = match s.split_once('@') {
        Some((k, c)) => (k.trim().to_string(), parse_coords(c)?),
        None => (s.trim().to_string(), Vec::new()),
    };
    if catalog().by_key(&key).is_none() {
        return Err(Error::BadInput(format!("unknown catalog key '{key}'")));
    }
    Ok(PointedCategoryNode {
        group: key,
        class: coords,
    })
}

fn factors_str(factors: &[i64]) -> String {
    if factors.is_empty() {
        "0".to_string()
    } else {
        factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect::<Vec<_>>()
            .join("+")
    }
}

pub fn cmd_groups(order: usize) -> Result<Outcome> {
    let entries = catalog().of_order(order);
    if entries.is_empty() {
        return Err(Error::OrderOutOfCatalog(order, morita_core::group::CATALOG_MAX_ORDER));
    }
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "key": e.key,
                "label": e.group.label(),
                "order": e.group.order(),
                "abelian": e.abelian,
            })
        })
        .collect();
    let mut table = format!("{:<6} {:<14} {:>5}  abelian\n", "key", "label", "order");
    for e in &entries {
        table.push_str(&format!(
            "{:<6} {:<14} {:>5}  {}\n",
            e.key,
            e.group.label(),
            e.group.order(),
            if e.abelian { "yes" } else { "no" }
        ));
    }
    Ok(ok(
        json!({"schema": "morita-groups/1", "order": order, "groups": rows}),
        table,
    ))
}

pub fn cmd_cohomology(
    ws: &Workspace,
    group: &str,
    degree: usize,
    modulus: Option<i64>,
) -> Result<Outcome> {
    let g = resolve_group(group)?;
    if degree == 0 {
        return Err(Error::BadInput("degree must be at least 1".into()));
    }
    let n = g.order() as i64;
    let m = modulus.unwrap_or(n);
    if m % n != 0 {
        return Err(Error::BadInput(format!(
            "working modulus must be a multiple of |G| = {n}"
        )));
    }
    let h = ws.circle_cohomology(&g, degree, m)?;
    let json = json!({
        "schema": "morita-cohomology/1",
        "group": group,
        "degree": degree,
        "coefficients": h.coefficients,
        "modulus": h.modulus,
        "invariant_factors": h.factors,
        "basis": h.basis,
    });
    let table = format!(
        "H^{degree}({}, Q/Z) = {}   invariant factors {:?}\n",
        g.label(),
        factors_str(&h.factors),
        h.factors
    );
    Ok(ok(json, table))
}

pub fn cmd_orbits(ws: &Workspace, group: &str) -> Result<Outcome> {
    let g = resolve_group(group)?;
    let orbits = aut_orbits(ws, &g)?;
    let rows: Vec<Value> = orbits
        .orbits
        .iter()
        .map(|o| {
            json!({
                "representative": o[0],
                "size": o.len(),
                "members": o,
            })
        })
        .collect();
    let mut table = format!(
        "H^3({}, Q/Z) = {}; {} orbits under Aut\n{:<16} size  members\n",
        g.label(),
        factors_str(&orbits.h.factors),
        orbits.orbits.len(),
        "representative"
    );
    for o in &orbits.orbits {
        table.push_str(&format!(
            "{:<16} {:>4}  {}\n",
            format!("{:?}", o[0]),
            o.len(),
            o.iter()
                .map(|m| format!("{m:?}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    let json = json!({
        "schema": "morita-orbits/1",
        "group": group,
        "invariant_factors": orbits.h.factors,
        "orbits": rows,
    });
    Ok(ok(json, table))
}

pub fn cmd_lhs(ws: &Workspace, group: &str, subgroup: &str) -> Result<Outcome> {
    let g = resolve_group(group)?;
    let elems = parse_elements(subgroup)?;
    let (ext, _) = extension_class(&g, &elems)?;
    let ext = Arc::new(ext);
    let mut cells = Vec::new();
    let mut grid: Vec<Vec<String>> = vec![vec![String::new(); 5]; 5];
    for q in 0..=4usize {
        for p in 0..=(4 - q) {
            let cell = e2_cell(ws, &ext, p, q)?;
            let display = if cell.divisible {
                "C*".to_string()
            } else {
                factors_str(&cell.factors)
            };
            grid[q][p] = display.clone();
            cells.push(json!({"p": p, "q": q, "factors": cell.factors, "display": display}));
        }
    }
    let mut d2 = Vec::new();
    let mut d2_table = String::new();
    for p in [1usize, 2] {
        let s = d2_summary(ws, &ext, p)?;
        d2_table.push_str(&format!(
            "d2: E2^{{{p},1}} = {} -> E2^{{{},0}} = {}   {}\n",
            factors_str(&s.source_factors),
            p + 2,
            factors_str(&s.target_factors),
            if s.is_zero {
                "zero map"
            } else if s.is_injective {
                "injective"
            } else {
                "nonzero"
            }
        ));
        d2.push(json!({
            "p": p,
            "source_factors": s.source_factors,
            "target_factors": s.target_factors,
            "matrix": s.matrix,
            "is_zero": s.is_zero,
            "is_injective": s.is_injective,
        }));
    }
    let mut table = format!(
        "E2 page of 1 -> {} -> {} -> {} -> 1 (rows q, columns p)\n",
        ext.a.group().label(),
        g.label(),
        ext.k.label()
    );
    let width = grid
        .iter()
        .flat_map(|r| r.iter().map(|c| c.len()))
        .max()
        .unwrap_or(2)
        + 2;
    for q in (0..=4usize).rev() {
        table.push_str(&format!("{q} |"));
        for p in 0..=4 {
            let cell = if p + q <= 4 { grid[q][p].as_str() } else { "" };
            table.push_str(&format!(" {cell:<width$}"));
        }
        table.push('\n');
    }
    table.push_str(&format!("  +{}\n   ", "-".repeat((width + 1) * 5)));
    for p in 0..=4 {
        table.push_str(&format!(" {p:<width$}"));
    }
    table.push('\n');
    table.push_str(&d2_table);
    let json = json!({
        "schema": "morita-lhs/1",
        "group": group,
        "subgroup": elems,
        "kernel": ext.a.group().label(),
        "quotient": ext.k.label(),
        "cells": cells,
        "d2": d2,
    });
    Ok(ok(json, table))
}

fn omega_from_coords(
    ws: &Workspace,
    g: &Arc<FiniteGroup>,
    coords: &[i64],
) -> Result<(CircleCochain, Value)> {
    let n = g.order() as i64;
    let h3 = ws.circle_cohomology(g, 3, n)?;
    if coords.len() != h3.factors.len() {
        return Err(Error::BadInput(format!(
            "twist needs {} coordinates for invariant factors {:?}",
            h3.factors.len(),
            h3.factors
        )));
    }
    let omega = CircleCochain {
        base: g.clone(),
        arity: 3,
        modulus: h3.modulus,
        values: h3.representative(coords),
    };
    let basis_echo = json!({
        "invariant_factors": h3.factors,
        "modulus": h3.modulus,
        "basis": h3.basis,
    });
    Ok((omega, basis_echo))
}

pub fn cmd_dual(ws: &Workspace, group: &str, subgroup: &str, omega: Option<&str>) -> Result<Outcome> {
    let g = resolve_group(group)?;
    let elems = parse_elements(subgroup)?;
    let coords = match omega {
        Some(s) => parse_coords(s)?,
        None => {
            let h3 = ws.circle_cohomology(&g, 3, g.order() as i64)?;
            vec![0; h3.factors.len()]
        }
    };
    let (omega, basis_echo) = omega_from_coords(ws, &g, &coords)?;
    let (ext, iso) = extension_class(&g, &elems)?;
    let ext = Arc::new(ext);
    let omega_x = transport_to_catalog(&ext.group, &iso, &omega);
    let verdict = omega_membership(ws, &ext, &omega_x)?;
    let Some(witness) = verdict.witness else {
        let json = json!({
            "schema": "morita-dual/1",
            "group": group,
            "subgroup": elems,
            "omega": coords,
            "basis": basis_echo,
            "pointed": false,
            "obstruction": "the twist class does not lie in the bidegrees (2,1)+(3,0) of the double complex for this subgroup",
        });
        let table = format!(
            "not pointed: the dual of ({}, {coords:?}) with respect to A = {elems:?} is not a pointed category\n",
            g.label()
        );
        return Ok(Outcome {
            json,
            table,
            exit: 2,
        });
    };
    let datum = DualityDatum::new(ext.clone(), witness.f_hat.clone(), witness.epsilon.clone())?;
    let orbits = OrbitCache::default();
    let (from, to) = morita_core::morita::dual_node(ws, &orbits, &datum)?;
    let json = json!({
        "schema": "morita-dual/1",
        "group": group,
        "subgroup": elems,
        "omega": coords,
        "basis": basis_echo,
        "pointed": true,
        "node": {"group": from.group, "class": from.class},
        "dual_node": {"group": to.group, "class": to.class},
        "witness": {
            "f_hat": witness.f_hat.values,
            "epsilon": {"modulus": witness.epsilon.modulus, "values": witness.epsilon.values},
        },
    });
    let table = format!(
        "dual of ({}, {coords:?}) w.r.t. A = {elems:?}:\n  {}  ~  {}\n",
        g.label(),
        from,
        to
    );
    Ok(ok(json, table))
}

fn core_version() -> &'static str {
    morita_core::VERSION
}

pub fn load_or_classify(ws: &Workspace, n: usize, jobs: usize) -> Result<MoritaDatabase> {
    if let Ok(dir) = std::env::var("MORITA_CACHE_DIR") {
        let path = PathBuf::from(&dir).join(format!("morita-db-{n}-v{}.json", core_version()));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(value) = serde_json::from_str::<Value>(&text) {
                if let Ok(db) = MoritaDatabase::from_json(&value) {
                    if db.dimension == n && db.version == core_version() {
                        return Ok(db);
                    }
                }
            }
        }
        let db = classify(ws, n, jobs)?;
        let _ = std::fs::create_dir_all(&dir);
        let _ = std::fs::write(&path, serde_json::to_string_pretty(&db.to_json()).unwrap());
        return Ok(db);
    }
    classify(ws, n, jobs)
}

pub fn render_classes(db: &MoritaDatabase) -> String {
    let mut table = format!(
        "{} weak Morita classes at global dimension {} ({} nodes, {} witnessed edges)\n",
        db.classes.len(),
        db.dimension,
        db.nodes.len(),
        db.edges.len()
    );
    for (i, class) in db.classes.iter().enumerate() {
        let members: Vec<String> = class
            .iter()
            .map(|&idx| {
                let n = &db.nodes[idx];
                format!(
                    "{} @ [{}]",
                    n.group,
                    n.class
                        .iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        table.push_str(&format!("{:>3}: {}\n", i, members.join("  ~  ")));
    }
    table
}

pub fn cmd_classify(
    ws: &Workspace,
    dimension: usize,
    jobs: usize,
    out: Option<&PathBuf>,
) -> Result<Outcome> {
    let db = load_or_classify(ws, dimension, jobs)?;
    let json = db.to_json();
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&json).unwrap())
            .map_err(|e| Error::BadInput(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(ok(json, render_classes(&db)))
}

pub fn cmd_check(ws: &Workspace, node_a: &str, node_b: &str, jobs: usize) -> Result<Outcome> {
    let a = parse_node(node_a)?;
    let b = parse_node(node_b)?;
    let order_a = catalog().by_key(&a.group).unwrap().group.order();
    let order_b = catalog().by_key(&b.group).unwrap().group.order();
    if order_a != order_b {
        return Err(Error::BadInput(
            "global dimensions differ; the categories cannot be equivalent".into(),
        ));
    }
    let db = load_or_classify(ws, order_a, jobs)?;
    let result = check_equivalence(ws, &db, &a, &b)?;
    let chain: Vec<Value> = result
        .chain
        .iter()
        .map(|&ei| {
            let e = &db.edges[ei];
            json!({
                "from": {"group": db.nodes[e.from].group, "class": db.nodes[e.from].class},
                "to": {"group": db.nodes[e.to].group, "class": db.nodes[e.to].class},
                "witness": e.witness,
            })
        })
        .collect();
    let json = json!({
        "schema": "morita-check/1",
        "node_a": {"group": result.node_a.group, "class": result.node_a.class},
        "node_b": {"group": result.node_b.group, "class": result.node_b.class},
        "equivalent": result.equivalent,
        "chain": chain,
    });
    let table = if result.equivalent {
        format!(
            "equivalent: {}  ~  {}  ({} witnessed edge(s))\n",
            result.node_a,
            result.node_b,
            result.chain.len()
        )
    } else {
        format!("not equivalent: {}  vs  {}\n", result.node_a, result.node_b)
    };
    Ok(Outcome {
        json,
        table,
        exit: if result.equivalent { 0 } else { 2 },
    })
}

pub fn workspace(max_cols: usize) -> Workspace {
    Workspace::new(Limits { max_cols })
}
