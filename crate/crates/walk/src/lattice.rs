use loqc_fock::C64;
use rand::Rng;

use crate::{Result, WalkError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coin {
    /// `H ⊗ H`.
    Hadamard,
    /// `X ⊗ X`: the walker reverses on a defect.
    BitFlip,
}

/// Static coin assignment over `|x|, |y| ≤ extent`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinField {
    extent: usize,
    defect: Vec<bool>,
    p: f64,
}

impl CoinField {
    /// Defect-free lattice (`p = 1`).
    pub fn clear(extent: usize) -> Self {
        let side = 2 * extent + 1;
        CoinField { extent, defect: vec![false; side * side], p: 1.0 }
    }

    /// Each site other than the origin is a defect with probability `1 − p`.
    pub fn random<R: Rng + ?Sized>(extent: usize, p: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(WalkError::Parameter(format!("site probability {p} outside [0, 1]")));
        }
        let mut field = CoinField::clear(extent);
        field.p = p;
        let origin = field.index(0, 0);
        for (i, d) in field.defect.iter_mut().enumerate() {
            *d = rng.random::<f64>() >= p && i != origin;
        }
        Ok(field)
    }

    /// Defects at the listed sites.
    pub fn with_defects(extent: usize, sites: &[(i64, i64)]) -> Result<Self> {
        let mut field = CoinField::clear(extent);
        for &(x, y) in sites {
            if !field.contains(x, y) {
                return Err(WalkError::Parameter(format!("defect ({x},{y}) outside the lattice")));
            }
            let i = field.index(x, y);
            field.defect[i] = true;
        }
        let live = field.defect.iter().filter(|d| !**d).count();
        field.p = live as f64 / field.defect.len() as f64;
        Ok(field)
    }

    pub fn extent(&self) -> usize {
        self.extent
    }

    /// Probability a site is live (for listed defects, the live fraction).
    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn coin(&self, x: i64, y: i64) -> Coin {
        if self.defect[self.index(x, y)] {
            Coin::BitFlip
        } else {
            Coin::Hadamard
        }
    }

    fn contains(&self, x: i64, y: i64) -> bool {
        let e = self.extent as i64;
        x.abs() <= e && y.abs() <= e
    }

    fn index(&self, x: i64, y: i64) -> usize {
        let e = self.extent as i64;
        ((x + e) * (2 * e + 1) + (y + e)) as usize
    }
}

/// Coin index `2·[c_x = −1] + [c_y = −1]`.
pub(crate) fn coin_index(cx: i8, cy: i8) -> usize {
    2 * usize::from(cx < 0) + usize::from(cy < 0)
}

const SHIFT: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Walker amplitudes on a lattice of half-extent `extent`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    extent: usize,
    time: usize,
    amps: Vec<C64>,
}

impl WalkState {
    /// `|0, 0, +1, +1⟩`.
    pub fn origin(extent: usize) -> Self {
        let side = 2 * extent + 1;
        let mut amps = vec![C64::new(0.0, 0.0); side * side * 4];
        let centre = (extent * side + extent) * 4;
        amps[centre] = C64::new(1.0, 0.0);
        WalkState { extent, time: 0, amps }
    }

    pub fn extent(&self) -> usize {
        self.extent
    }

    pub fn time(&self) -> usize {
        self.time
    }

    fn site(&self, x: i64, y: i64) -> usize {
        let e = self.extent as i64;
        (((x + e) * (2 * e + 1) + (y + e)) * 4) as usize
    }

    /// Zero outside the lattice.
    pub fn amplitude(&self, x: i64, y: i64, cx: i8, cy: i8) -> C64 {
        let e = self.extent as i64;
        if x.abs() > e || y.abs() > e {
            return C64::new(0.0, 0.0);
        }
        self.amps[self.site(x, y) + coin_index(cx, cy)]
    }

    /// `P(x, y)`: sum over the four coin states.
    pub fn probability(&self, x: i64, y: i64) -> f64 {
        let e = self.extent as i64;
        if x.abs() > e || y.abs() > e {
            return 0.0;
        }
        let s = self.site(x, y);
        self.amps[s..s + 4].iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `p_x = Σ_y P(x, y)` for `x = −extent..=extent`.
    pub fn marginal_x(&self) -> Vec<f64> {
        let e = self.extent as i64;
        let r = self.reach();
        let mut out = vec![0.0; 2 * self.extent + 1];
        for x in -r..=r {
            out[(x + e) as usize] = (-r..=r).map(|y| self.probability(x, y)).sum();
        }
        out
    }

    /// Half-width of the square that can hold amplitude at this time.
    fn reach(&self) -> i64 {
        self.time.min(self.extent) as i64
    }

    /// Sites `(x, y)` inside the reachable square with `x ≡ y ≡ t (mod 2)`.
    pub(crate) fn live_sites(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let r = self.reach();
        let t = self.time as i64;
        (-r..=r)
            .filter(move |x| (x - t).rem_euclid(2) == 0)
            .flat_map(move |x| (-r..=r).filter(move |y| (y - t).rem_euclid(2) == 0).map(move |y| (x, y)))
    }

    pub(crate) fn site_amps_mut(&mut self, x: i64, y: i64) -> &mut [C64] {
        let s = self.site(x, y);
        &mut self.amps[s..s + 4]
    }

    /// Coin then shift, in place.
    pub fn advance(&mut self, coins: &CoinField) -> Result<()> {
        if coins.extent != self.extent {
            return Err(WalkError::FieldMismatch { field: coins.extent, state: self.extent });
        }
        if self.time >= self.extent {
            return Err(WalkError::Extent { time: self.time + 1, extent: self.extent });
        }
        let mut next = vec![C64::new(0.0, 0.0); self.amps.len()];
        let sites: Vec<(i64, i64)> = self.live_sites().collect();
        for (x, y) in sites {
            let s = self.site(x, y);
            let a = [self.amps[s], self.amps[s + 1], self.amps[s + 2], self.amps[s + 3]];
            let c = match coins.coin(x, y) {
                Coin::Hadamard => [
                    (a[0] + a[1] + a[2] + a[3]) * 0.5,
                    (a[0] - a[1] + a[2] - a[3]) * 0.5,
                    (a[0] + a[1] - a[2] - a[3]) * 0.5,
                    (a[0] - a[1] - a[2] + a[3]) * 0.5,
                ],
                Coin::BitFlip => [a[3], a[2], a[1], a[0]],
            };
            for (k, &(dx, dy)) in SHIFT.iter().enumerate() {
                next[self.site(x + dx, y + dy) + k] = c[k];
            }
        }
        self.amps = next;
        self.time += 1;
        Ok(())
    }
}

/// One step `S·C` of `state` under `coins`.
pub fn step(state: &WalkState, coins: &CoinField) -> Result<WalkState> {
    let mut next = state.clone();
    next.advance(coins)?;
    Ok(next)
}
