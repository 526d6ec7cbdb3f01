use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;

/// Vertex colors; red, green and blue track the first, second and third
/// barycentric coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<Color> {
        match c.to_ascii_uppercase() {
            'R' => Some(Color::Red),
            'G' => Some(Color::Green),
            'B' => Some(Color::Blue),
            _ => None,
        }
    }

    pub fn coordinate(self) -> usize {
        self as usize
    }

    pub fn of_coordinate(k: usize) -> Color {
        [Color::Red, Color::Green, Color::Blue][k]
    }
}

/// Lattice point `(a, b)` with `a + b <= N`; its barycentric coordinates are
/// `(a, b, N - a - b) / N`. Red sits at `(N, 0)`, green at `(0, N)` and blue
/// at `(0, 0)`.
pub type LatticePoint = (usize, usize);

/// A small triangle, given by its three lattice points in sorted order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub vertices: [LatticePoint; 3],
}

impl Cell {
    fn new(mut v: [LatticePoint; 3]) -> Self {
        v.sort_unstable();
        Cell { vertices: v }
    }
}

/// Legally colored subdivision of the triangle into `N^2` cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpernerInstance {
    n: usize,
    colors: Vec<Color>,
}

fn allowed(n: usize, (a, b): LatticePoint, color: Color) -> bool {
    match color {
        Color::Red => a > 0,
        Color::Green => b > 0,
        Color::Blue => a + b < n,
    }
}

impl SpernerInstance {
    /// `colors` lists lattice points with `b` outer and `a` inner, as in
    /// [`SpernerInstance::points`].
    pub fn new(n: usize, colors: Vec<Color>) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("subdivision parameter must be positive"));
        }
        if colors.len() != (n + 1) * (n + 2) / 2 {
            return Err(Error::input(format!(
                "expected {} colors for N = {}, got {}",
                (n + 1) * (n + 2) / 2,
                n,
                colors.len()
            )));
        }
        let inst = SpernerInstance { n, colors };
        for p in inst.points() {
            let c = inst.color(p);
            if !allowed(n, p, c) {
                return Err(Error::input(format!(
                    "illegal coloring: boundary vertex ({}, {}, {}) cannot be {:?}",
                    p.0,
                    p.1,
                    n - p.0 - p.1,
                    c
                )));
            }
        }
        Ok(inst)
    }

    /// Colors each point independently and uniformly among its legal colors.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let mut r = rng::stream(seed, 0);
        let colors = points(n)
            .map(|p| {
                let options: Vec<Color> = [Color::Red, Color::Green, Color::Blue]
                    .into_iter()
                    .filter(|&c| allowed(n, p, c))
                    .collect();
                options[r.random_range(0..options.len())]
            })
            .collect();
        SpernerInstance::new(n, colors)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(LatticePoint) -> Color) -> Result<Self> {
        SpernerInstance::new(n, points(n).map(&mut f).collect())
    }

    /// First token `N`, then the color letters `R`, `G`, `B` in lattice order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace().filter(|t| !t.starts_with('#'));
        let n: usize = tokens
            .next()
            .ok_or_else(|| Error::input("empty Sperner file"))?
            .parse()
            .map_err(|_| Error::input("first token must be the subdivision parameter N"))?;
        let mut colors = Vec::new();
        for t in tokens {
            for c in t.chars() {
                colors.push(Color::from_letter(c).ok_or_else(|| Error::input(format!("unknown color {:?}", c)))?);
            }
        }
        SpernerInstance::new(n, colors)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        let mut idx = 0;
        for b in 0..=self.n {
            let row: String = (0..=self.n - b)
                .map(|_| {
                    idx += 1;
                    self.colors[idx - 1].letter()
                })
                .collect();
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint> {
        points(self.n)
    }

    fn index(&self, (a, b): LatticePoint) -> usize {
        // Rows b' < b hold N + 1 - b' points each.
        b * (self.n + 1) - b * (b.saturating_sub(1)) / 2 + a
    }

    pub fn color(&self, p: LatticePoint) -> Color {
        self.colors[self.index(p)]
    }

    fn contains(&self, (a, b): (i64, i64)) -> bool {
        a >= 0 && b >= 0 && (a + b) as usize <= self.n
    }

    /// All `N^2` cells: upward cells `(a,b),(a+1,b),(a,b+1)` and downward cells
    /// `(a+1,b),(a,b+1),(a+1,b+1)`.
    pub fn cells(&self) -> Vec<Cell> {
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for b in 0..n {
            for a in 0..n - b {
                out.push(Cell::new([(a, b), (a + 1, b), (a, b + 1)]));
                if a + b + 2 <= n {
                    out.push(Cell::new([(a + 1, b), (a, b + 1), (a + 1, b + 1)]));
                }
            }
        }
        out
    }

    pub fn is_trichromatic(&self, cell: &Cell) -> bool {
        let set: BTreeSet<Color> = cell.vertices.iter().map(|&p| self.color(p)).collect();
        set.len() == 3
    }
}

fn points(n: usize) -> impl Iterator<Item = LatticePoint> {
    (0..=n).flat_map(move |b| (0..=n - b).map(move |a| (a, b)))
}

/// Exhaustive scan of all cells; returns the trichromatic ones.
pub fn sperner_count(inst: &SpernerInstance) -> (usize, Vec<Cell>) {
    let found: Vec<Cell> = inst.cells().into_iter().filter(|c| inst.is_trichromatic(c)).collect();
    (found.len(), found)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpernerPath {
    pub cell: Cell,
    /// Red-green doors crossed, boundary entries included.
    pub doors_crossed: usize,
}

fn is_door(inst: &SpernerInstance, p: LatticePoint, q: LatticePoint) -> bool {
    matches!(
        (inst.color(p), inst.color(q)),
        (Color::Red, Color::Green) | (Color::Green, Color::Red)
    )
}

/// Planar embedding with green at the origin, blue to the right and red on
/// top (x doubled to stay integral).
fn embed(n: usize, (a, b): LatticePoint) -> (i64, i64) {
    (2 * n as i64 - a as i64 - 2 * b as i64, a as i64)
}

/// Checks that moving from `from` across the edge `p q` keeps the red
/// endpoint on the left.
fn red_on_left(inst: &SpernerInstance, from: (i64, i64), p: LatticePoint, q: LatticePoint) -> bool {
    let red = if inst.color(p) == Color::Red { p } else { q };
    let (pp, qq, rr) = (embed(inst.n, p), embed(inst.n, q), embed(inst.n, red));
    // Doubled midpoint keeps everything integral.
    let mid = (pp.0 + qq.0, pp.1 + qq.1);
    let dir = (mid.0 - 2 * from.0, mid.1 - 2 * from.1);
    let to_red = (2 * rr.0 - mid.0, 2 * rr.1 - mid.1);
    dir.0 * to_red.1 - dir.1 * to_red.0 > 0
}

/// Follows red-green doors from outside the triangle. Entry is through the
/// lowest unused door on the red-green side that has green below and red
/// above; a walk that leaves through that side re-enters at the next such
/// door.
pub fn sperner_find(inst: &SpernerInstance) -> Result<SpernerPath> {
    let n = inst.n;
    // Left side from the green corner up: g_j = (j, N - j).
    let entries: Vec<usize> = (0..n)
        .filter(|&j| inst.color((j, n - j)) == Color::Green && inst.color((j + 1, n - j - 1)) == Color::Red)
        .collect();
    let mut used_boundary = BTreeSet::new();
    let mut visited = BTreeSet::new();
    let mut doors = 0usize;
    for &j in &entries {
        if used_boundary.contains(&j) {
            continue;
        }
        used_boundary.insert(j);
        let (p, q) = ((j, n - j), (j + 1, n - j - 1));
        let mut third = (j, n - 1 - j);
        // The entry direction is inward: from the reflected outside point.
        let outside = (embed(n, p).0 + embed(n, q).0 - embed(n, third).0, embed(n, p).1 + embed(n, q).1 - embed(n, third).1);
        if !red_on_left(inst, outside, p, q) {
            return Err(Error::invariant("boundary entry violates the door orientation"));
        }
        doors += 1;
        let mut entry = (p, q);
        loop {
            let cell = Cell::new([entry.0, entry.1, third]);
            if !visited.insert(cell) {
                return Err(Error::invariant("Sperner walk revisited a cell"));
            }
            if inst.is_trichromatic(&cell) {
                return Ok(SpernerPath { cell, doors_crossed: doors });
            }
            // The third vertex is red or green, so exactly one other edge is a door.
            let (p, q) = if is_door(inst, entry.0, third) { (entry.0, third) } else { (entry.1, third) };
            let leaving = if (p, q) == (entry.0, third) { entry.1 } else { entry.0 };
            if !red_on_left(inst, embed(n, leaving), p, q) {
                return Err(Error::invariant("interior crossing violates the door orientation"));
            }
            doors += 1;
            let next = (p.0 as i64 + q.0 as i64 - leaving.0 as i64, p.1 as i64 + q.1 as i64 - leaving.1 as i64);
            if !inst.contains(next) {
                // Left through the red-green side; record that door.
                let k = p.0.min(q.0);
                used_boundary.insert(k);
                break;
            }
            entry = (p, q);
            third = (next.0 as usize, next.1 as usize);
        }
    }
    Err(Error::invariant("path following exhausted the boundary doors"))
}
