//! Particle advection over a two-tile tiling read as a street network.
//!
//! Tile 0 is a horizontal street, tile 1 a vertical one. Particles move at
//! unit speed along the axis of the cell they last committed to, on the
//! lattice of cell-center lines. Each time a particle reaches a cell
//! center it commits to that cell: its axis of travel becomes the cell's
//! street axis and its direction along that axis is redrawn uniformly.
//! Hitting the outer boundary either reverses the particle or wraps it to
//! the opposite side.
//!
//! Every particle draws from its own seeded stream, so a particle's
//! trajectory depends only on the field, the shared seed and its own
//! index, never on how many other particles are present.

use crate::conditions::Axis;
use crate::grid::{Tile, Tiling};
use crate::{Error, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;

/// Two-tile tiling read as a street network, with or without wrap-around
/// boundaries.
#[derive(Debug, Clone)]
pub struct FlowField {
    tiling: Tiling,
    wrap: bool,
}

impl FlowField {
    pub fn new(tiling: Tiling, wrap: bool) -> Result<Self> {
        if tiling.tile_span() > 2 {
            return Err(Error::InvalidInput(
                "flow fields are two-tile tilings only".into(),
            ));
        }
        Ok(Self { tiling, wrap })
    }

    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn wrap(&self) -> bool {
        self.wrap
    }

    pub fn m(&self) -> usize {
        self.tiling.m()
    }

    pub fn n(&self) -> usize {
        self.tiling.n()
    }

    fn axis_at(&self, i: usize, j: usize) -> Axis {
        if self.tiling.get(i, j) == 0 {
            Axis::Horizontal
        } else {
            Axis::Vertical
        }
    }
}

/// Direction of travel; `Up` decreases `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heading {
    Left,
    Right,
    Up,
    Down,
}

impl Heading {
    pub fn axis(self) -> Axis {
        match self {
            Heading::Left | Heading::Right => Axis::Horizontal,
            Heading::Up | Heading::Down => Axis::Vertical,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Heading::Left => Heading::Right,
            Heading::Right => Heading::Left,
            Heading::Up => Heading::Down,
            Heading::Down => Heading::Up,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Heading::Left => "left",
            Heading::Right => "right",
            Heading::Up => "up",
            Heading::Down => "down",
        }
    }
}

/// One advected particle.
#[derive(Debug, Clone)]
pub struct Particle {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub heading: Heading,
    /// Street tile of the last committed cell; the heading axis always
    /// matches it.
    pub committed: Tile,
    rng: ChaCha8Rng,
}

/// Field plus particles; stepping mutates the particles in place.
#[derive(Debug, Clone)]
pub struct FlowState {
    field: FlowField,
    particles: Vec<Particle>,
}

impl FlowState {
    /// `count` particles at uniformly drawn cell centers.
    pub fn new(field: FlowField, count: usize, seed: u64) -> Result<Self> {
        let centers = (0..count)
            .map(|id| {
                let mut rng = crate::rng::stream_rng(seed, id as u64);
                let i = rng.random_range(0..field.m());
                let j = rng.random_range(0..field.n());
                (i as f64 + 0.5, j as f64 + 0.5)
            })
            .collect::<Vec<_>>();
        Self::with_particles(field, &centers, seed)
    }

    /// Particles at the centers of the cells containing the given
    /// positions.
    pub fn with_particles(field: FlowField, positions: &[(f64, f64)], seed: u64) -> Result<Self> {
        let (m, n) = (field.m(), field.n());
        let mut particles = Vec::with_capacity(positions.len());
        for (id, &(x, y)) in positions.iter().enumerate() {
            if !(x.is_finite() && y.is_finite())
                || x < 0.0
                || y < 0.0
                || x > m as f64
                || y > n as f64
            {
                return Err(Error::OutOfBounds { x, y, m, n });
            }
            let i = (x.floor() as usize).min(m - 1);
            let j = (y.floor() as usize).min(n - 1);
            let mut particle = Particle {
                id,
                x: i as f64 + 0.5,
                y: j as f64 + 0.5,
                heading: Heading::Right,
                committed: 0,
                rng: crate::rng::stream_rng(seed, id as u64),
            };
            commit(&mut particle, &field, i, j);
            particles.push(particle);
        }
        Ok(Self { field, particles })
    }

    pub fn field(&self) -> &FlowField {
        &self.field
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }

    /// Advance every particle by `dt` time units at unit speed.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidInput(format!(
                "step size {dt} must be positive"
            )));
        }
        for particle in &mut self.particles {
            advance(particle, &self.field, dt);
        }
        Ok(())
    }

    /// Step `steps` times, emitting one CSV row per particle per recorded
    /// step, the initial state included.
    pub fn trajectories_csv(&mut self, steps: usize, dt: f64) -> Result<String> {
        let mut out = String::from("step,particle_id,x,y,heading\n");
        let emit = |step: usize, particles: &[Particle], out: &mut String| {
            for p in particles {
                writeln!(out, "{step},{},{},{},{}", p.id, p.x, p.y, p.heading.label())
                    .expect("string write");
            }
        };
        emit(0, &self.particles, &mut out);
        for step in 1..=steps {
            self.step(dt)?;
            emit(step, &self.particles, &mut out);
        }
        Ok(out)
    }
}

/// Re-orient a particle at the center of cell `(i, j)`: travel axis from
/// the street tile, direction redrawn. Exactly one draw per commit.
fn commit(particle: &mut Particle, field: &FlowField, i: usize, j: usize) {
    let forward: bool = particle.rng.random();
    particle.heading = match field.axis_at(i, j) {
        Axis::Horizontal => {
            if forward {
                Heading::Right
            } else {
                Heading::Left
            }
        }
        Axis::Vertical => {
            if forward {
                Heading::Down
            } else {
                Heading::Up
            }
        }
    };
    particle.committed = field.tiling().get(i, j);
}

/// Distance to the next half-integer strictly ahead of `v`.
fn to_next_center(v: f64, increasing: bool) -> f64 {
    let frac = v - v.floor();
    if increasing {
        if frac < 0.5 {
            0.5 - frac
        } else {
            1.5 - frac
        }
    } else if frac > 0.5 {
        frac - 0.5
    } else {
        frac + 0.5
    }
}

fn advance(particle: &mut Particle, field: &FlowField, dt: f64) {
    let (m, n) = (field.m() as f64, field.n() as f64);
    let mut remaining = dt;
    while remaining > 0.0 {
        let (pos, limit) = match particle.heading.axis() {
            Axis::Horizontal => (particle.x, m),
            Axis::Vertical => (particle.y, n),
        };
        let increasing = matches!(particle.heading, Heading::Right | Heading::Down);
        let to_wall = if increasing { limit - pos } else { pos };
        let to_center = to_next_center(pos, increasing);
        // Events landing exactly on the step boundary are processed now;
        // a commit must not be skipped just because the step ends on it.
        let event = to_wall.min(to_center);
        if event > remaining {
            shift(particle, remaining);
            return;
        }
        remaining -= event;
        if to_wall < to_center {
            // Snap onto the wall, then wrap or reverse.
            set_pos(particle, if increasing { limit } else { 0.0 });
            if field.wrap() {
                set_pos(particle, if increasing { 0.0 } else { limit });
            } else {
                particle.heading = particle.heading.reverse();
            }
        } else {
            shift(particle, event);
            // Snap to the exact half-integer to stop drift accumulating.
            match particle.heading.axis() {
                Axis::Horizontal => particle.x = snap_center(particle.x),
                Axis::Vertical => particle.y = snap_center(particle.y),
            }
            let i = (particle.x.floor() as usize).min(field.m() - 1);
            let j = (particle.y.floor() as usize).min(field.n() - 1);
            commit(particle, field, i, j);
        }
    }
}

fn snap_center(v: f64) -> f64 {
    (v - 0.5).round() + 0.5
}

fn shift(particle: &mut Particle, distance: f64) {
    let signed = match particle.heading {
        Heading::Right => (distance, 0.0),
        Heading::Left => (-distance, 0.0),
        Heading::Down => (0.0, distance),
        Heading::Up => (0.0, -distance),
    };
    particle.x += signed.0;
    particle.y += signed.1;
}

fn set_pos(particle: &mut Particle, value: f64) {
    match particle.heading.axis() {
        Axis::Horizontal => particle.x = value,
        Axis::Vertical => particle.y = value,
    }
}
