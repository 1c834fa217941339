//! Computing a Schnyder wood by contracting down to a small base map and
//! growing the wood back one edge at a time.

use crate::error::{Error, Result};
use crate::torus_map::{edge_of, BaseCase, Contraction, TorusMap};
use crate::wood::{
    all_mono_cycles, check_schnyder, t2_relaxed_violation, t3_relaxed_violation,
    vertex_violation, EdgeState, Wood, WoodType,
};

/// Smallest Type 1 wood of a base map in the order of [`EdgeState::all`],
/// edge 0 most significant.
pub fn base_wood(g: &TorusMap) -> Result<Wood> {
    let base = g
        .base_case()
        .ok_or_else(|| Error::NotBase(format!("map with n={} m={}", g.n(), g.m())))?;
    if !g.is_essentially_3_connected() {
        return Err(Error::NotBase("map is not essentially 3-connected".into()));
    }
    let states = EdgeState::all();
    let m = g.m();
    let mut idx = vec![0usize; m];
    loop {
        let w = Wood::from_states(&idx.iter().map(|&k| states[k]).collect::<Vec<_>>());
        if let Ok(WoodType::Type1) = check_schnyder(g, &w) {
            return Ok(w);
        }
        let mut k = m;
        loop {
            if k == 0 {
                return Err(Error::Impossible(format!("{:?} has no Type 1 wood", base)));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < states.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// The wood of a basic map: loops uni-directed in colour 1, the spine
/// bi-oriented in colours 0 and 2.
pub fn basic_wood(g: &TorusMap) -> Result<Wood> {
    if !g.is_basic() {
        return Err(Error::NotBase("map is not basic".into()));
    }
    let m = g.m();
    let assignments: Vec<(usize, usize)> = if g.n() == 1 { vec![(0, 1), (1, 0)] } else { vec![] };
    let mut candidates = Vec::new();
    if g.n() == 1 {
        for &(spine, lp) in &assignments {
            for &ls in &[true, false] {
                for &sp in &[true, false] {
                    let mut st = vec![EdgeState::Plus(0); m];
                    st[lp] = if ls { EdgeState::Plus(1) } else { EdgeState::Minus(1) };
                    st[spine] = if sp {
                        EdgeState::Both { plus: 0, minus: 2 }
                    } else {
                        EdgeState::Both { plus: 2, minus: 0 }
                    };
                    candidates.push(Wood::from_states(&st));
                }
            }
        }
    } else {
        let reference = (0..m).find(|&e| g.is_loop(e)).unwrap();
        let c0 = g.offset(2 * reference);
        for &ls in &[true, false] {
            for &sp in &[true, false] {
                let mut st = vec![EdgeState::Plus(0); m];
                for (e, s) in st.iter_mut().enumerate() {
                    if g.is_loop(e) {
                        let same = g.offset(2 * e) == c0;
                        *s = if same == ls { EdgeState::Plus(1) } else { EdgeState::Minus(1) };
                    }
                }
                // walk the spine from vertex 0
                let mut x = 0;
                let mut from = usize::MAX;
                for _ in 0..g.n() {
                    let d = g
                        .rotation(x)
                        .iter()
                        .copied()
                        .find(|&d| !g.is_loop(edge_of(d)) && edge_of(d) != from)
                        .unwrap();
                    let fwd = d % 2 == 0;
                    st[edge_of(d)] = if fwd == sp {
                        EdgeState::Both { plus: 0, minus: 2 }
                    } else {
                        EdgeState::Both { plus: 2, minus: 0 }
                    };
                    from = edge_of(d);
                    x = g.target(d);
                }
                candidates.push(Wood::from_states(&st));
            }
        }
    }
    candidates
        .into_iter()
        .find(|w| check_schnyder(g, w).is_ok())
        .ok_or_else(|| Error::Impossible("basic map without a wood".into()))
}

/// Lowest edge whose contraction keeps the map essentially 3-connected and
/// not basic.
pub fn find_contractible_edge(g: &TorusMap) -> Option<Contraction> {
    (0..g.m()).filter(|&e| !g.is_loop(e)).find_map(|e| {
        let c = g.contract_edge(e).ok()?;
        if c.map.is_essentially_3_connected() && !c.map.is_basic() {
            Some(c)
        } else {
            None
        }
    })
}

/// Extend a Type 1 wood of the contracted map to the original map. Only
/// the contracted edge and its four neighbours in the rotations of its
/// endpoints are recoloured; the first valid choice in lexicographic order
/// of edge index and [`EdgeState::all`] wins.
pub fn decontract(g: &TorusMap, c: &Contraction, small: &Wood) -> Result<Wood> {
    if small.m() != c.map.m() {
        return Err(Error::InconsistentWood("wood does not fit the contracted map".into()));
    }
    let mut w = Wood::empty(g.m());
    for e in 0..g.m() {
        if let Some(k) = c.edge_map[e] {
            if !c.affected.contains(&e) {
                let s = small
                    .state(k)
                    .ok_or_else(|| Error::InconsistentWood(format!("edge {} unoriented", k)))?;
                w.set_state(e, s);
            }
        }
    }
    let free = c.affected.clone();
    let fixed_bi = (0..g.m())
        .filter(|e| !free.contains(e))
        .filter(|&e| w.state(e).map_or(false, |s| s.is_bi()))
        .count() as i64;
    let want_bi = 3 * g.n() as i64 - g.m() as i64 - fixed_bi;
    if want_bi < 0 || want_bi > free.len() as i64 {
        return Err(Error::DecontractFail(format!(
            "needs {} bi-oriented edges among {}",
            want_bi,
            free.len()
        )));
    }
    // vertices to check once their last free edge is set
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); free.len()];
    let mut ends: Vec<usize> = free
        .iter()
        .flat_map(|&e| [g.origin(2 * e), g.target(2 * e)])
        .collect();
    ends.sort();
    ends.dedup();
    for &x in &ends {
        let last = free
            .iter()
            .rposition(|&e| g.origin(2 * e) == x || g.target(2 * e) == x)
            .unwrap();
        check_at[last].push(x);
    }
    let states = EdgeState::all();
    let mut idx = vec![0usize; free.len()];
    let mut depth = 0usize;
    let mut bi_used = 0i64;
    let mut tried = 0usize;
    loop {
        // try state idx[depth] at depth
        if idx[depth] >= states.len() {
            idx[depth] = 0;
            w.set_color(2 * free[depth], None);
            w.set_color(2 * free[depth] + 1, None);
            if depth == 0 {
                break;
            }
            depth -= 1;
            if w.state(free[depth]).map_or(false, |s| s.is_bi()) {
                bi_used -= 1;
            }
            idx[depth] += 1;
            continue;
        }
        let s = states[idx[depth]];
        let b = s.is_bi() as i64;
        w.set_state(free[depth], s);
        let ok = bi_used + b <= want_bi
            && check_at[depth].iter().all(|&x| vertex_violation(g, &w, x).is_none());
        if !ok {
            idx[depth] += 1;
            continue;
        }
        if depth + 1 < free.len() {
            bi_used += b;
            depth += 1;
            idx[depth] = 0;
            continue;
        }
        if bi_used + b == want_bi {
            tried += 1;
            if let Ok(cycles) = all_mono_cycles(g, &w) {
                if t2_relaxed_violation(&cycles).is_none()
                    && t3_relaxed_violation(&cycles).is_none()
                    && check_schnyder(g, &w).is_ok()
                {
                    return Ok(w);
                }
            }
        }
        idx[depth] += 1;
    }
    Err(Error::DecontractFail(format!(
        "no colouring of edges {:?} works ({} locally valid candidates)",
        free, tried
    )))
}

/// A Schnyder wood of an essentially 3-connected toroidal map. Basic maps
/// get their Type 2 wood, every other map a Type 1 wood.
pub fn compute_wood(g: &TorusMap) -> Result<Wood> {
    compute_wood_traced(g).map(|(w, _)| w)
}

/// Like [`compute_wood`], also returning the contracted edge of each step.
pub fn compute_wood_traced(g: &TorusMap) -> Result<(Wood, Vec<usize>)> {
    if let Some(s) = g.essential_3_connectivity_violation() {
        return Err(Error::NotEssentially3Connected(s));
    }
    if g.is_basic() {
        return Ok((basic_wood(g)?, Vec::new()));
    }
    let mut chain: Vec<(TorusMap, Contraction)> = Vec::new();
    let mut cur = g.clone();
    while !matches!(cur.base_case(), Some(BaseCase::ThreeLoops) | Some(BaseCase::Brick)) {
        let c = find_contractible_edge(&cur).ok_or_else(|| {
            Error::Impossible(format!("no contractible edge in a map with {} edges", cur.m()))
        })?;
        let next = c.map.clone();
        chain.push((cur, c));
        cur = next;
    }
    let mut w = base_wood(&cur)?;
    let trace = chain.iter().map(|(_, c)| c.edge).collect();
    while let Some((big, c)) = chain.pop() {
        w = decontract(&big, &c, &w)?;
    }
    check_schnyder(g, &w)?;
    Ok((w, trace))
}
