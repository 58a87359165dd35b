//! Iterative Tarjan over an implicitly given graph on `0..num_states`.

const UNVISITED: u32 = u32::MAX;

/// Strongly connected components, listed so that every edge leaving a
/// component points to a component listed earlier.
#[derive(Clone, Debug)]
pub struct Sccs {
    /// Component id of every state.
    pub component: Vec<u32>,
    /// Members of each component in the order they were found.
    pub members: Vec<Vec<u32>>,
}

impl Sccs {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Computes the components of the graph whose out-neighbours are given by `succ`.
pub fn tarjan<F, I>(num_states: usize, mut succ: F) -> Sccs
where
    F: FnMut(u32) -> I,
    I: Iterator<Item = u32>,
{
    assert!(num_states < UNVISITED as usize, "too many states");
    let mut index = vec![UNVISITED; num_states];
    let mut low = vec![0u32; num_states];
    let mut on_stack = vec![false; num_states];
    let mut component = vec![UNVISITED; num_states];
    let mut stack: Vec<u32> = Vec::new();
    let mut members = Vec::new();
    let mut frames: Vec<(u32, I)> = Vec::new();
    let mut next_index = 0u32;

    for root in 0..num_states as u32 {
        if index[root as usize] != UNVISITED {
            continue;
        }
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;
        frames.push((root, succ(root)));

        while let Some((v, iter)) = frames.last_mut() {
            let v = *v;
            if let Some(w) = iter.next() {
                let wi = w as usize;
                if index[wi] == UNVISITED {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    frames.push((w, succ(w)));
                } else if on_stack[wi] {
                    low[v as usize] = low[v as usize].min(index[wi]);
                }
                continue;
            }
            frames.pop();
            if let Some((parent, _)) = frames.last() {
                let p = *parent as usize;
                low[p] = low[p].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let id = members.len() as u32;
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w as usize] = false;
                    component[w as usize] = id;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                members.push(comp);
            }
        }
    }
    Sccs { component, members }
}
