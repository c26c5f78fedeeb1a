//! Flattening a tree decomposition into a post-order schedule of
//! leaf/introduce/forget/join steps, consumed by the dynamic programs.

use serde::Serialize;

use super::TreeDecomposition;

/// One step of a stack machine over partial solutions. `Leaf` pushes the
/// empty state, `Introduce`/`Forget` change the top state's bag, `Join`
/// merges the two topmost states, which share the same bag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NiceOp {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

enum Frame {
    Enter(usize),
    AfterChild { node: usize, index: usize },
}

/// Schedule rooted at `root`; ends with every node forgotten, leaving one
/// state on the stack. Each graph node is forgotten exactly once when the
/// decomposition is valid.
pub fn nice_schedule(td: &TreeDecomposition, root: usize) -> Vec<NiceOp> {
    let adj = td.adjacency();
    let bags = td.bags();
    let mut children = vec![Vec::new(); bags.len()];
    let mut seen = vec![false; bags.len()];
    let mut queue = std::collections::VecDeque::from([root]);
    seen[root] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                children[x].push(y);
                queue.push_back(y);
            }
        }
    }

    let mut ops = Vec::new();
    let mut stack = vec![Frame::Enter(root)];
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Enter(node) => {
                if children[node].is_empty() {
                    ops.push(NiceOp::Leaf);
                    ops.extend(bags[node].iter().map(|&x| NiceOp::Introduce(x)));
                } else {
                    stack.push(Frame::AfterChild { node, index: 0 });
                    stack.push(Frame::Enter(children[node][0]));
                }
            }
            Frame::AfterChild { node, index } => {
                let child = children[node][index];
                let (from, to) = (&bags[child], &bags[node]);
                ops.extend(
                    from.iter()
                        .filter(|x| to.binary_search(x).is_err())
                        .map(|&x| NiceOp::Forget(x)),
                );
                ops.extend(
                    to.iter()
                        .filter(|x| from.binary_search(x).is_err())
                        .map(|&x| NiceOp::Introduce(x)),
                );
                if index > 0 {
                    ops.push(NiceOp::Join);
                }
                if index + 1 < children[node].len() {
                    stack.push(Frame::AfterChild { node, index: index + 1 });
                    stack.push(Frame::Enter(children[node][index + 1]));
                }
            }
        }
    }
    ops.extend(bags[root].iter().map(|&x| NiceOp::Forget(x)));
    ops
}
