use super::{Multigraph, Vertex};
use crate::error::{Error, Result};

/// Eulerian circuit by Hierholzer's algorithm, returned as edge indices in
/// walking order. The walk starts at the smallest vertex of positive degree.
/// An edgeless multigraph yields an empty circuit.
pub fn euler_circuit(g: &Multigraph) -> Result<Vec<usize>> {
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) % 2 == 1) {
        return Err(Error::OddDegree(v));
    }
    let Some(start) = (0..g.n()).find(|&v| g.degree(v) > 0) else {
        return Ok(Vec::new());
    };

    let mut used = vec![false; g.m()];
    let mut cursor = vec![0usize; g.n()];
    let mut stack: Vec<(Vertex, Option<usize>)> = vec![(start, None)];
    let mut circuit = Vec::with_capacity(g.m());

    while let Some(&(v, arrived_by)) = stack.last() {
        let incident = g.incident(v);
        while cursor[v] < incident.len() && used[incident[cursor[v]]] {
            cursor[v] += 1;
        }
        if cursor[v] == incident.len() {
            stack.pop();
            if let Some(e) = arrived_by {
                circuit.push(e);
            }
        } else {
            let e = incident[cursor[v]];
            used[e] = true;
            stack.push((g.other_end(e, v), Some(e)));
        }
    }

    if circuit.len() != g.m() {
        return Err(Error::Disconnected);
    }
    circuit.reverse();
    Ok(circuit)
}
