"""Graphs and tree decompositions in PACE format, plus their nice form.

Vertices are 0-indexed internally and 1-indexed in files.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class FormatError(ValueError):
    """Malformed .gr or .td content."""


class DecompositionError(ValueError):
    """A tree decomposition violates one of its axioms."""


class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError("negative vertex count")
        self.n = n
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.adj = [tuple(sorted(s)) for s in nbrs]

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def has_edge(self, u, v) -> bool:
        return v in self.adj[u]

    def degree(self, v) -> int:
        return len(self.adj[v])

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj


def _data_lines(text: str):
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield line.split()


def parse_graph(text: str) -> Graph:
    """Parse PACE-2017 ``.gr`` content."""
    lines = _data_lines(text)
    header = next(lines, None)
    if header is None or len(header) != 4 or header[:2] != ["p", "tw"]:
        raise FormatError("expected header 'p tw <n> <m>'")
    try:
        n, m = int(header[2]), int(header[3])
    except ValueError as exc:
        raise FormatError("non-integer header field") from exc
    edges = []
    for parts in lines:
        if len(parts) != 2:
            raise FormatError(f"bad edge line {' '.join(parts)!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad edge line {' '.join(parts)!r}") from exc
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"vertex out of range in edge {u} {v}")
        if u == v:
            raise FormatError(f"self-loop at vertex {u}")
        edges.append((u - 1, v - 1))
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def write_graph(g: Graph) -> str:
    out = [f"p tw {g.n} {g.m}"]
    out += [f"{u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


@dataclass
class TreeDecomposition:
    """Bags indexed 0..k-1 plus the edges of the tree that connects them."""

    bags: list[tuple[int, ...]]
    tree_edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self.bags = [tuple(sorted(set(b))) for b in self.bags]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self):
        nb = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            nb[a].append(b)
            nb[b].append(a)
        return nb


def parse_decomposition(text: str, g: Graph | None = None) -> TreeDecomposition:
    """Parse PACE-2017 ``.td`` content and validate it against ``g`` if given."""
    lines = _data_lines(text)
    header = next(lines, None)
    if header is None or len(header) != 5 or header[:2] != ["s", "td"]:
        raise FormatError("expected header 's td <bags> <maxbag> <n>'")
    try:
        nb, _maxbag, n = (int(x) for x in header[2:])
    except ValueError as exc:
        raise FormatError("non-integer header field") from exc
    if g is not None and n != g.n:
        raise FormatError(f"decomposition is for {n} vertices, graph has {g.n}")
    bags: list = [None] * nb
    tree_edges = []
    for parts in lines:
        try:
            nums = [int(x) for x in parts[1:]] if parts[0] == "b" else [int(x) for x in parts]
        except ValueError as exc:
            raise FormatError(f"bad line {' '.join(parts)!r}") from exc
        if parts[0] == "b":
            if not nums or not 1 <= nums[0] <= nb:
                raise FormatError(f"bad bag line {' '.join(parts)!r}")
            if bags[nums[0] - 1] is not None:
                raise FormatError(f"bag {nums[0]} defined twice")
            verts = nums[1:]
            if any(not 1 <= v <= n for v in verts):
                raise FormatError(f"vertex out of range in bag {nums[0]}")
            bags[nums[0] - 1] = [v - 1 for v in verts]
        else:
            if len(nums) != 2 or not all(1 <= x <= nb for x in nums):
                raise FormatError(f"bad tree edge {' '.join(parts)!r}")
            tree_edges.append((nums[0] - 1, nums[1] - 1))
    missing = [i + 1 for i, b in enumerate(bags) if b is None]
    if missing:
        raise FormatError(f"bags {missing} not defined")
    td = TreeDecomposition(bags, tree_edges)
    if g is not None:
        validate_decomposition(td, g)
    return td


def write_decomposition(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    out += ["b " + " ".join(str(x) for x in [i + 1] + [v + 1 for v in b]) for i, b in enumerate(td.bags)]
    out += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(out) + "\n"


def validate_decomposition(td: TreeDecomposition, g: Graph) -> int:
    """Check tree shape and the three axioms; return the width."""
    k = len(td.bags)
    if k == 0:
        if g.n:
            raise DecompositionError("no bags but the graph has vertices")
        return -1
    if len(td.tree_edges) != k - 1:
        raise DecompositionError(f"{k} bags need {k - 1} tree edges, got {len(td.tree_edges)}")
    nb = td.neighbors()
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in nb[a]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    if len(seen) != k:
        raise DecompositionError("the bags do not form a tree")
    holders = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                raise DecompositionError(f"bag {i + 1} holds unknown vertex {v + 1}")
            holders[v].append(i)
    for v in range(g.n):
        if not holders[v]:
            raise DecompositionError(f"vertex {v + 1} is in no bag")
    bagsets = [set(b) for b in td.bags]
    for u, v in g.edges():
        if not any(v in bagsets[i] for i in holders[u]):
            raise DecompositionError(f"edge ({u + 1},{v + 1}) uncovered")
    for v in range(g.n):
        own = set(holders[v])
        start = holders[v][0]
        reach = {start}
        stack = [start]
        while stack:
            a = stack.pop()
            for b in nb[a]:
                if b in own and b not in reach:
                    reach.add(b)
                    stack.append(b)
        if reach != own:
            apart = sorted(own - reach)[0]
            raise DecompositionError(
                f"bags holding vertex {v + 1} are disconnected: bag {start + 1} cannot reach bag {apart + 1}"
            )
    return td.width


def heuristic_decomposition(g: Graph) -> TreeDecomposition:
    """Tree decomposition from a min-degree elimination ordering."""
    if g.n == 0:
        return TreeDecomposition([()], [])
    nbrs = [set(a) for a in g.adj]
    alive = set(range(g.n))
    order, bags = [], []
    while alive:
        v = min(alive, key=lambda x: (len(nbrs[x]), x))
        order.append(v)
        bags.append((v, *sorted(nbrs[v])))
        for a in nbrs[v]:
            nbrs[a].discard(v)
            nbrs[a].update(w for w in nbrs[v] if w != a)
        alive.discard(v)
        nbrs[v] = set()
    pos = {v: i for i, v in enumerate(order)}
    edges = []
    roots = []
    for i, bag in enumerate(bags):
        later = [pos[w] for w in bag[1:]]
        if later:
            edges.append((i, min(later)))
        else:
            roots.append(i)
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    return TreeDecomposition(bags, edges)


# ---------------------------------------------------------------- nice form

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass
class NiceNode:
    kind: str
    bag: tuple[int, ...]
    vertex: int | None = None
    children: tuple[int, ...] = ()


@dataclass
class NiceTreeDecomposition:
    """Nodes listed children-first; the last node is the root (empty bag)."""

    nodes: list[NiceNode]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def __len__(self):
        return len(self.nodes)


def make_nice(td: TreeDecomposition, g: Graph | None = None, root: int = 0) -> NiceTreeDecomposition:
    """Convert to nice form without increasing the width."""
    if g is not None:
        validate_decomposition(td, g)
    nodes: list[NiceNode] = []

    def add(kind, bag, vertex=None, children=()):
        nodes.append(NiceNode(kind, tuple(sorted(bag)), vertex, tuple(children)))
        return len(nodes) - 1

    def morph(node, cur, target):
        # forget first so the bag never grows past max(|cur|, |target|)
        cur = set(cur)
        for v in sorted(cur - set(target)):
            cur.discard(v)
            node = add(FORGET, cur, v, (node,))
        for v in sorted(set(target) - cur):
            cur.add(v)
            node = add(INTRODUCE, cur, v, (node,))
        return node

    if not td.bags:
        add(LEAF, ())
        return NiceTreeDecomposition(nodes)
    nb = td.neighbors()
    parent = {root: None}
    order = [root]
    for a in order:
        for b in nb[a]:
            if b not in parent:
                parent[b] = a
                order.append(b)
    kids = {a: [b for b in nb[a] if parent.get(b) == a] for a in order}
    top_of: dict[int, int] = {}
    for a in reversed(order):
        bag = td.bags[a]
        branches = [morph(top_of[c], td.bags[c], bag) for c in kids[a]]
        if not branches:
            branches = [morph(add(LEAF, ()), (), bag)]
        node = branches[0]
        for other in branches[1:]:
            node = add(JOIN, bag, None, (node, other))
        top_of[a] = node
    morph(top_of[root], td.bags[root], ())
    if nodes[-1].bag:
        raise AssertionError("root bag not empty")
    return NiceTreeDecomposition(nodes)


def check_nice(nice: NiceTreeDecomposition, g: Graph) -> None:
    """Raise DecompositionError unless every nice-form invariant holds."""
    nodes = nice.nodes
    if not nodes or nodes[-1].bag:
        raise DecompositionError("root bag must be empty")
    used_as_child = set()
    for i, nd in enumerate(nodes):
        for c in nd.children:
            if c >= i:
                raise DecompositionError(f"node {i} lists a later child {c}")
            if c in used_as_child:
                raise DecompositionError(f"node {c} has two parents")
            used_as_child.add(c)
        bag = set(nd.bag)
        if nd.kind == LEAF:
            if nd.children or nd.bag:
                raise DecompositionError(f"leaf {i} must be empty and childless")
        elif nd.kind == INTRODUCE:
            (c,) = nd.children
            if nd.vertex in nodes[c].bag or bag != set(nodes[c].bag) | {nd.vertex}:
                raise DecompositionError(f"bad introduce node {i}")
        elif nd.kind == FORGET:
            (c,) = nd.children
            if nd.vertex not in nodes[c].bag or bag != set(nodes[c].bag) - {nd.vertex}:
                raise DecompositionError(f"bad forget node {i}")
        elif nd.kind == JOIN:
            if len(nd.children) != 2 or any(nodes[c].bag != nd.bag for c in nd.children):
                raise DecompositionError(f"bad join node {i}")
        else:
            raise DecompositionError(f"unknown node kind {nd.kind}")
    if len(used_as_child) != len(nodes) - 1:
        raise DecompositionError("nodes do not form a single tree")
    # each vertex forgotten exactly once, edges seen in some bag
    forgotten = [0] * g.n
    for nd in nodes:
        if nd.kind == FORGET:
            forgotten[nd.vertex] += 1
    if any(f != 1 for f in forgotten):
        raise DecompositionError("every vertex must be forgotten exactly once")
    covered = set()
    for nd in nodes:
        for a in nd.bag:
            for b in nd.bag:
                if a < b and g.has_edge(a, b):
                    covered.add((a, b))
    if len(covered) != g.m:
        raise DecompositionError("some edge is in no bag")


def path_decomposition_grid(rows: int, cols: int) -> TreeDecomposition:
    """Column-sweep path decomposition of a rows x cols grid (width = rows).

    Vertex (r, c) has index c * rows + r.
    """
    bags = []
    for c in range(cols - 1):
        for r in range(rows):
            # column c from row r down, column c+1 up to row r
            bag = [c * rows + i for i in range(r, rows)] + [(c + 1) * rows + i for i in range(r + 1)]
            bags.append(bag)
    if not bags:
        bags = [list(range(rows * cols))]
    return TreeDecomposition(bags, [(i, i + 1) for i in range(len(bags) - 1)])


def split_grid_decomposition(rows: int, cols: int) -> TreeDecomposition:
    """Two column sweeps that meet at a bag holding the middle column.

    Width is ``rows`` as for :func:`path_decomposition_grid`, but rooting at
    bag 0 (the middle column) gives a join node.
    """
    mid = cols // 2
    if cols < 3:
        return path_decomposition_grid(rows, cols)

    def sweep(order):
        return [order[i:i + rows + 1] for i in range(len(order) - rows)]

    left = [c * rows + r for c in range(mid + 1) for r in range(rows)]
    right = [c * rows + r for c in range(cols - 1, mid - 1, -1) for r in range(rows - 1, -1, -1)]
    a, b = sweep(left), sweep(right)
    # bag 0 is the middle column so that the default root sits on the join
    bags = [left[-rows:]] + a + b
    edges = [(i, i + 1) for i in range(1, len(a))]
    edges += [(i, i + 1) for i in range(len(a) + 1, len(a) + len(b))]
    edges += [(0, len(a)), (0, len(a) + len(b))]
    return TreeDecomposition(bags, edges)


def grid_graph(rows: int, cols: int) -> Graph:
    edges = []
    for c in range(cols):
        for r in range(rows):
            v = c * rows + r
            if r + 1 < rows:
                edges.append((v, v + 1))
            if c + 1 < cols:
                edges.append((v, v + rows))
    return Graph(rows * cols, edges)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        return path_graph(n)
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def random_graph(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi G(n, p) drawn with ``rng.random()``."""
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])
