//! Descendant mode on DAGs whose sinks are colored, and the reduction that
//! multiplies two boolean matrices with descendant-mode queries.
//!
//! A sink reachable along several paths is counted once. The reduction gadget
//! has one node `y(j, i)` per output cell, pointing to a row node for row `i`
//! of `A` and a column node for column `j` of `B`. The row node reaches one
//! sink colored `k` for each `A[i][k] = 1`, the column node one sink colored
//! `k` for each `B[k][j] = 1`. Color `k` then appears twice below `y(j, i)`
//! exactly when `A[i][k] = B[k][j] = 1`.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::tree::{ColorId, LeafColoredTree, NodeId, NIL};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SinkColoredDag {
    out_start: Vec<u32>,
    out: Vec<u32>,
    color: Vec<u32>,
    num_colors: usize,
    topo: Vec<u32>,
}

impl SinkColoredDag {
    pub fn new(n: usize, edges: &[(NodeId, NodeId)], colors: &[Option<ColorId>]) -> Result<Self> {
        if colors.len() != n {
            return Err(Error::InvalidDag(format!(
                "{} colors for {n} nodes",
                colors.len()
            )));
        }
        let mut out_start = vec![0u32; n + 1];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidDag(format!("edge ({a}, {b}) out of range")));
            }
            out_start[a + 1] += 1;
        }
        for v in 0..n {
            out_start[v + 1] += out_start[v];
        }
        let mut fill = out_start.clone();
        let mut out = vec![0u32; edges.len()];
        let mut indeg = vec![0u32; n];
        for &(a, b) in edges {
            out[fill[a] as usize] = b as u32;
            fill[a] += 1;
            indeg[b] += 1;
        }

        let mut topo = Vec::with_capacity(n);
        let mut queue: Vec<u32> = (0..n as u32).filter(|&v| indeg[v as usize] == 0).collect();
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &w in &out[out_start[v as usize] as usize..out_start[v as usize + 1] as usize] {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    queue.push(w);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidDag("graph has a cycle".into()));
        }

        let mut color = vec![NIL; n];
        let mut num_colors = 0;
        for v in 0..n {
            let sink = out_start[v] == out_start[v + 1];
            match (sink, colors[v]) {
                (true, Some(c)) => {
                    color[v] = c as u32;
                    num_colors = num_colors.max(c + 1);
                }
                (true, None) => return Err(Error::InvalidDag(format!("sink {v} has no color"))),
                (false, Some(_)) => {
                    return Err(Error::InvalidDag(format!("non-sink {v} carries a color")))
                }
                (false, None) => {}
            }
        }
        Ok(SinkColoredDag {
            out_start,
            out,
            color,
            num_colors,
            topo,
        })
    }

    /// The tree with edges pointing from parents to children.
    pub fn from_tree(t: &LeafColoredTree) -> Self {
        let edges: Vec<_> = (0..t.len())
            .filter_map(|v| t.parent(v).map(|p| (p, v)))
            .collect();
        let colors: Vec<_> = (0..t.len()).map(|v| t.color(v)).collect();
        Self::new(t.len(), &edges, &colors).expect("a tree is a DAG with colored sinks")
    }

    pub fn len(&self) -> usize {
        self.color.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color.is_empty()
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn successors(&self, v: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.out[self.out_start[v] as usize..self.out_start[v + 1] as usize]
            .iter()
            .map(|&w| w as NodeId)
    }

    pub fn color(&self, v: NodeId) -> Option<ColorId> {
        let c = self.color[v];
        (c != NIL).then_some(c as ColorId)
    }

    /// A topological order (every edge goes forward).
    pub fn topological_order(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.topo.iter().map(|&v| v as NodeId)
    }

    /// Most frequent color among the distinct sinks reachable from `u`
    /// (`u` itself if it is a sink), ties to the smallest color.
    pub fn dm_query(&self, u: NodeId) -> (ColorId, usize) {
        let mut seen = vec![false; self.len()];
        let mut count = vec![0usize; self.num_colors];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(v) = stack.pop() {
            if let Some(c) = self.color(v) {
                count[c] += 1;
            }
            for w in self.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        let mut best = 0;
        for c in 1..count.len() {
            if count[c] > count[best] {
                best = c;
            }
        }
        (best, count.get(best).copied().unwrap_or(0))
    }

    /// Edge list, one `from to` pair per line, then `# sink color` lines.
    pub fn write_edges<W: Write>(&self, w: &mut W) -> io::Result<()> {
        for v in 0..self.len() {
            for x in self.successors(v) {
                writeln!(w, "{v} {x}")?;
            }
        }
        for v in 0..self.len() {
            if let Some(c) = self.color(v) {
                writeln!(w, "# sink {v} color {c}")?;
            }
        }
        Ok(())
    }
}

pub type BoolMatrix = Vec<Vec<bool>>;

/// The reduction DAG for `A · B`.
#[derive(Debug, Clone)]
pub struct BmmInstance {
    n: usize,
    dag: SinkColoredDag,
}

impl BmmInstance {
    pub fn new(a: &BoolMatrix, b: &BoolMatrix) -> Result<Self> {
        let n = a.len();
        let square = |m: &BoolMatrix| m.len() == n && m.iter().all(|r| r.len() == n);
        if !square(a) || !square(b) {
            return Err(Error::InvalidParameter(
                "matrices must be square and of equal size".into(),
            ));
        }
        let mut edges = Vec::new();
        let mut colors: Vec<Option<ColorId>> = vec![None; n * n + 2 * n];
        for j in 0..n {
            for i in 0..n {
                let y = j * n + i;
                edges.push((y, n * n + i));
                edges.push((y, n * n + n + j));
            }
        }
        // Rows and columns without ones get a sink of a private color so
        // they stay non-sinks; a private color occurs once below any y.
        let mut private = n;
        let mut sink = |from: NodeId, c: ColorId, edges: &mut Vec<(NodeId, NodeId)>| {
            let s = colors.len();
            colors.push(Some(c));
            edges.push((from, s));
        };
        for i in 0..n {
            let r = n * n + i;
            let ks: Vec<_> = (0..n).filter(|&k| a[i][k]).collect();
            if ks.is_empty() {
                sink(r, private, &mut edges);
                private += 1;
            }
            for k in ks {
                sink(r, k, &mut edges);
            }
        }
        for j in 0..n {
            let r = n * n + n + j;
            let ks: Vec<_> = (0..n).filter(|&k| b[k][j]).collect();
            if ks.is_empty() {
                sink(r, private, &mut edges);
                private += 1;
            }
            for k in ks {
                sink(r, k, &mut edges);
            }
        }
        let total = colors.len();
        let dag = SinkColoredDag::new(total, &edges, &colors)?;
        Ok(BmmInstance { n, dag })
    }

    pub fn dag(&self) -> &SinkColoredDag {
        &self.dag
    }

    pub fn y(&self, j: usize, i: usize) -> NodeId {
        j * self.n + i
    }

    pub fn row_node(&self, i: usize) -> NodeId {
        self.n * self.n + i
    }

    pub fn col_node(&self, j: usize) -> NodeId {
        self.n * self.n + self.n + j
    }

    /// Layer of a node: 0 for `y` nodes, 1 for row/column nodes, 2 for sinks.
    pub fn layer(&self, v: NodeId) -> usize {
        let nn = self.n * self.n;
        if v < nn {
            0
        } else if v < nn + 2 * self.n {
            1
        } else {
            2
        }
    }
}

/// `A · B` over the boolean semiring, one descendant-mode query per cell.
pub fn bmm_via_dm(a: &BoolMatrix, b: &BoolMatrix) -> Result<BoolMatrix> {
    let inst = BmmInstance::new(a, b)?;
    let n = a.len();
    let mut c = vec![vec![false; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (k, _) = inst.dag.dm_query(inst.y(j, i));
            *cell = k < n && a[i][k] && b[k][j];
        }
    }
    Ok(c)
}

/// Direct triple-loop product.
pub fn bool_product(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

/// Reads `n`, then `n` rows of `A` and `n` rows of `B`. A row is either
/// space-separated `0`/`1` or a run of `0`/`1` characters.
pub fn parse_matrices(text: &str) -> Result<(BoolMatrix, BoolMatrix)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing matrix size"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(line, format!("bad matrix size {first:?}")))?;
    let mut rows = Vec::with_capacity(2 * n);
    for _ in 0..2 * n {
        let (line, text) = lines
            .next()
            .ok_or_else(|| Error::parse(0, format!("expected {} rows", 2 * n)))?;
        let cells: Vec<&str> = if text.contains(char::is_whitespace) {
            text.split_whitespace().collect()
        } else {
            text.split("").filter(|s| !s.is_empty()).collect()
        };
        let row = cells
            .iter()
            .map(|&c| match c {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(Error::parse(line, format!("bad matrix entry {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(Error::parse(
                line,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows.push(row);
    }
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "trailing data after the matrices"));
    }
    let b = rows.split_off(n);
    Ok((rows, b))
}

pub fn format_matrix(m: &BoolMatrix) -> String {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|&x| if x { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> BoolMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| x == 1).collect())
            .collect()
    }

    #[test]
    fn worked_instance() {
        let a = m(&[&[1, 0], &[0, 1]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        let inst = BmmInstance::new(&a, &b).unwrap();
        assert_eq!(inst.dag().dm_query(inst.y(0, 1)), (1, 2));
        assert_eq!(bmm_via_dm(&a, &b).unwrap(), m(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn identity_squared() {
        let id = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(bmm_via_dm(&id, &id).unwrap(), id);
    }

    #[test]
    fn zero_rows_and_columns() {
        let a = m(&[&[0, 0], &[1, 1]]);
        let b = m(&[&[0, 1], &[0, 1]]);
        assert_eq!(bmm_via_dm(&a, &b).unwrap(), bool_product(&a, &b));
    }

    #[test]
    fn cycles_and_colors_are_validated() {
        assert!(SinkColoredDag::new(2, &[(0, 1), (1, 0)], &[None, None]).is_err());
        assert!(SinkColoredDag::new(2, &[(0, 1)], &[None, None]).is_err());
        assert!(SinkColoredDag::new(2, &[(0, 1)], &[Some(0), Some(0)]).is_err());
        let d = SinkColoredDag::new(
            4,
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
            &[None, None, None, Some(5)],
        )
        .unwrap();
        assert_eq!(d.dm_query(0), (5, 1));
    }

    #[test]
    fn matrix_formats() {
        let (a, b) = parse_matrices("2\n1 0\n0 1\n01\n10\n").unwrap();
        assert_eq!(a, m(&[&[1, 0], &[0, 1]]));
        assert_eq!(b, m(&[&[0, 1], &[1, 0]]));
        assert!(parse_matrices("2\n1 0\n").is_err());
        assert!(parse_matrices("1\n2\n0\n").is_err());
    }
}
