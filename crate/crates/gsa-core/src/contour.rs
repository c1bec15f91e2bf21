//! Marching-squares extraction of iso-lines from a [`ChartGrid`] diagnostic,
//! e.g. the neutral curve `|G| = 1`.

use crate::chart::{ChartField, ChartGrid};
use crate::error::Result;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// A connected chain of `(Nc, kdx)` points.
pub type Polyline = Vec<(f64, f64)>;

/// Identifies a grid edge carrying a level crossing. `Row(i, j)` joins
/// samples `(i, j)-(i, j+1)` along kdx; `Col(i, j)` joins `(i, j)-(i+1, j)`
/// along Nc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum EdgeId {
    Row(usize, usize),
    Col(usize, usize),
}

/// Extract the contour polylines of `field = level` in `(Nc, kdx)`
/// coordinates. Crossing points are linearly interpolated between adjacent
/// samples; ambiguous saddle cells are resolved by the sign of the cell
/// average. An empty result means the level is never crossed.
pub fn neutral_boundary(grid: &ChartGrid, level: f64, field: ChartField) -> Result<Vec<Polyline>> {
    let vals = grid.field_matrix(field)?;
    let nc = &grid.nc_axis;
    let kdx = &grid.kdx_axis;
    let (rows, cols) = (nc.len(), kdx.len());

    let above = |v: f64| v > level;
    let interp = |a: f64, b: f64, va: f64, vb: f64| a + (level - va) / (vb - va) * (b - a);

    // One crossing point per grid edge, shared by the two adjacent cells so
    // chains join on bit-identical coordinates.
    let mut row_cross: BTreeMap<EdgeId, (f64, f64)> = BTreeMap::new();
    let mut col_cross: BTreeMap<EdgeId, (f64, f64)> = BTreeMap::new();
    for i in 0..rows {
        for j in 0..cols.saturating_sub(1) {
            let (va, vb) = (vals[i][j], vals[i][j + 1]);
            if above(va) != above(vb) {
                let p = (nc[i], interp(kdx[j], kdx[j + 1], va, vb));
                row_cross.insert(EdgeId::Row(i, j), p);
            }
        }
    }
    for i in 0..rows.saturating_sub(1) {
        for j in 0..cols {
            let (va, vb) = (vals[i][j], vals[i + 1][j]);
            if above(va) != above(vb) {
                let p = (interp(nc[i], nc[i + 1], va, vb), kdx[j]);
                col_cross.insert(EdgeId::Col(i, j), p);
            }
        }
    }

    // Cell corners: a = (i, j), b = (i, j+1), c = (i+1, j), d = (i+1, j+1).
    // Edges: bottom = Row(i, j), top = Row(i+1, j),
    //        left = Col(i, j), right = Col(i, j+1).
    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for i in 0..rows.saturating_sub(1) {
        for j in 0..cols.saturating_sub(1) {
            let a = above(vals[i][j]);
            let b = above(vals[i][j + 1]);
            let c = above(vals[i + 1][j]);
            let d = above(vals[i + 1][j + 1]);
            let case = (a as u8) | (b as u8) << 1 | (c as u8) << 2 | (d as u8) << 3;

            let bottom = EdgeId::Row(i, j);
            let top = EdgeId::Row(i + 1, j);
            let left = EdgeId::Col(i, j);
            let right = EdgeId::Col(i, j + 1);

            match case {
                0 | 15 => {}
                1 | 14 => segments.push((bottom, left)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((top, left)),
                8 | 7 => segments.push((top, right)),
                5 | 10 => segments.push((bottom, top)),
                6 | 9 => {
                    // saddle: the cell-average sign decides which diagonal
                    // pair of corners the center joins
                    let avg =
                        0.25 * (vals[i][j] + vals[i][j + 1] + vals[i + 1][j] + vals[i + 1][j + 1]);
                    if above(avg) == a {
                        // (i,j) and (i+1,j+1) connect through the center
                        segments.push((bottom, right));
                        segments.push((top, left));
                    } else {
                        segments.push((bottom, left));
                        segments.push((top, right));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    // Chain segments into polylines. Each crossing edge touches at most two
    // segments, so chains are simple paths or loops.
    let mut adj: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
    for (n, (e1, e2)) in segments.iter().enumerate() {
        adj.entry(*e1).or_default().push(n);
        adj.entry(*e2).or_default().push(n);
    }
    let point_of = |e: EdgeId| -> (f64, f64) {
        match e {
            EdgeId::Row(..) => row_cross[&e],
            EdgeId::Col(..) => col_cross[&e],
        }
    };

    let mut used = alloc::vec![false; segments.len()];
    let mut contours: Vec<Polyline> = Vec::new();
    // Open chains first (start at degree-1 edges), then remaining loops.
    let endpoints: Vec<EdgeId> = adj
        .iter()
        .filter(|(_, segs)| segs.len() == 1)
        .map(|(e, _)| *e)
        .collect();
    let seeds = endpoints
        .into_iter()
        .chain(adj.keys().copied().collect::<Vec<_>>());

    for seed in seeds {
        let Some(&start_seg) = adj[&seed].iter().find(|&&s| !used[s]) else {
            continue;
        };
        let mut chain = alloc::vec![seed];
        let mut at = seed;
        let mut seg = start_seg;
        loop {
            used[seg] = true;
            let (e1, e2) = segments[seg];
            let next = if e1 == at { e2 } else { e1 };
            chain.push(next);
            at = next;
            match adj[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        contours.push(chain.into_iter().map(point_of).collect());
    }
    Ok(contours)
}
