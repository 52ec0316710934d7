//! Label flags in command-line order.

use clap::ArgMatches;
use lk_core::design::TwistAssignment;
use lk_core::mesh::EdgeKey;
use lk_core::periodic::PeriodicMesh;
use lk_core::{FaceId, LabeledMesh, LkError};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum LabelOp {
    SetAll(i64),
    Set(EdgeKey, i64),
    Null { face: usize, key: EdgeKey, occurrence: usize },
    Assign(TwistAssignment),
    Uniform(i64),
    ClassTwists(Vec<i64>),
}

fn ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::usage(format!("`{s}` is not a list of integers"))))
        .collect()
}

pub fn parse_edge(s: &str) -> Result<EdgeKey, CliError> {
    let v = ints(s)?;
    if v.len() != 2 || v.iter().any(|&x| x < 0) {
        return Err(CliError::usage(format!("`{s}` is not an edge A,B")));
    }
    Ok(EdgeKey::strict(v[0] as usize, v[1] as usize)?)
}

fn parse_set(s: &str) -> Result<LabelOp, CliError> {
    let (edge, t) = s.split_once('=').ok_or_else(|| CliError::usage(format!("`{s}` is not A,B=INT")))?;
    let t = t.trim().parse().map_err(|_| CliError::usage(format!("`{s}` is not A,B=INT")))?;
    Ok(LabelOp::Set(parse_edge(edge)?, t))
}

fn parse_null(s: &str) -> Result<LabelOp, CliError> {
    let v = ints(s)?;
    if !(3..=4).contains(&v.len()) || v.iter().any(|&x| x < 0) {
        return Err(CliError::usage(format!("`{s}` is not FACE,A,B[,OCC]")));
    }
    Ok(LabelOp::Null {
        face: v[0] as usize,
        key: EdgeKey::strict(v[1] as usize, v[2] as usize)?,
        occurrence: v.get(3).copied().unwrap_or(0) as usize,
    })
}

fn read_assignment(path: &str) -> Result<LabelOp, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(path, e))?;
    let a: TwistAssignment =
        serde_json::from_str(&text).map_err(|e| CliError::Validation(LkError::Malformed(format!("{path}: {e}"))))?;
    Ok(LabelOp::Assign(a))
}

/// Every label flag present in `m`, sorted by position on the command line.
pub fn ordered_ops(m: &ArgMatches) -> Result<Vec<LabelOp>, CliError> {
    let mut ops: Vec<(usize, LabelOp)> = Vec::new();
    let mut collect = |id: &str, parse: &dyn Fn(&str) -> Result<LabelOp, CliError>| -> Result<(), CliError> {
        if m.try_get_raw(id).ok().flatten().is_none() {
            return Ok(());
        }
        let (Some(idx), Some(raw)) = (m.indices_of(id), m.get_raw(id)) else {
            return Ok(());
        };
        for (i, v) in idx.zip(raw) {
            ops.push((i, parse(&v.to_string_lossy())?));
        }
        Ok(())
    };
    collect("set_all", &|v| Ok(LabelOp::SetAll(ints(v)?[0])))?;
    collect("set", &parse_set)?;
    collect("null", &parse_null)?;
    collect("assign", &read_assignment)?;
    collect("uniform", &|v| Ok(LabelOp::Uniform(ints(v)?[0])))?;
    collect("class_twists", &|v| Ok(LabelOp::ClassTwists(ints(v)?)))?;
    ops.sort_by_key(|(i, _)| *i);
    Ok(ops.into_iter().map(|(_, op)| op).collect())
}

pub fn apply_mesh(mesh: &mut LabeledMesh, ops: &[LabelOp]) -> Result<(), CliError> {
    for op in ops {
        match op {
            LabelOp::SetAll(t) => mesh.set_all_twists(*t),
            LabelOp::Set(key, t) => mesh.set_twist_by_key(*key, *t)?,
            LabelOp::Null { face, key, occurrence } => {
                let s = mesh.find_slot(FaceId(*face), *key, *occurrence)?;
                mesh.set_null(s, true);
            }
            LabelOp::Assign(a) => *mesh = a.apply(mesh)?,
            LabelOp::Uniform(_) | LabelOp::ClassTwists(_) => {
                return Err(CliError::usage("class twists only apply to periodic scaffolds"))
            }
        }
    }
    Ok(())
}

pub fn apply_periodic(pmesh: &mut PeriodicMesh, ops: &[LabelOp]) -> Result<(), CliError> {
    for op in ops {
        match op {
            LabelOp::Uniform(t) => pmesh.set_uniform_twist(*t),
            LabelOp::ClassTwists(v) => pmesh.assign_class_twists(v)?,
            _ => return Err(CliError::usage("edge labels do not apply to periodic scaffolds")),
        }
    }
    Ok(())
}
