//! Directed weighted interaction networks built from message-reply pairs,
//! their per-vertex topological metrics, and the strength-based
//! hub/intermediary/periphery partitioning.

use crate::ingest::MessageStore;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
pub enum NetworkError {
    #[error("network is already in status orientation")]
    AlreadyInverted,
    #[error("network has no vertices")]
    EmptyNetwork,
    #[error("{0} vertices cannot host three sectors")]
    DegenerateNetwork(usize),
    #[error("author `{0}` is not covered by the partition")]
    PartitionMismatch(String),
}

/// Edge orientation convention. Information flows from the original
/// author to the responder; the status network is the exact reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionMode {
    Information,
    Status,
}

/// Directed weighted reply graph over author ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionNetwork {
    vertices: BTreeSet<String>,
    edges: BTreeMap<(String, String), u64>,
    direction_mode: DirectionMode,
}

impl InteractionNetwork {
    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<(String, String), u64> {
        &self.edges
    }

    pub fn direction_mode(&self) -> DirectionMode {
        self.direction_mode
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Tab-separated edge list: `src<TAB>dst<TAB>weight`, sorted.
    pub fn to_edge_list_tsv(&self) -> String {
        let mut out = String::new();
        for ((src, dst), w) in &self.edges {
            out.push_str(&format!("{src}\t{dst}\t{w}\n"));
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn from_edges(
        vertices: &[&str],
        edges: &[(&str, &str, u64)],
        direction_mode: DirectionMode,
    ) -> InteractionNetwork {
        let mut vs: BTreeSet<String> = vertices.iter().map(|v| v.to_string()).collect();
        let mut es = BTreeMap::new();
        for (a, b, w) in edges {
            vs.insert(a.to_string());
            vs.insert(b.to_string());
            es.insert((a.to_string(), b.to_string()), *w);
        }
        InteractionNetwork {
            vertices: vs,
            edges: es,
            direction_mode,
        }
    }
}

/// Build the information network: each message replying to a resolvable
/// parent adds weight 1 to the edge parent-author -> responder. Authors
/// without edges remain as isolated vertices; self-replies are skipped.
pub fn build_information_network(store: &MessageStore) -> InteractionNetwork {
    let mut vertices = BTreeSet::new();
    let mut edges: BTreeMap<(String, String), u64> = BTreeMap::new();
    for msg in store.messages() {
        vertices.insert(msg.author.clone());
        if let Some(parent) = store.parent_of(msg) {
            if parent.author != msg.author {
                *edges
                    .entry((parent.author.clone(), msg.author.clone()))
                    .or_insert(0) += 1;
            }
        }
    }
    InteractionNetwork {
        vertices,
        edges,
        direction_mode: DirectionMode::Information,
    }
}

/// Reverse every edge, turning the information network into the status
/// network.
pub fn invert_to_status_network(
    net: &InteractionNetwork,
) -> Result<InteractionNetwork, NetworkError> {
    if net.direction_mode == DirectionMode::Status {
        return Err(NetworkError::AlreadyInverted);
    }
    let edges = net
        .edges
        .iter()
        .map(|((a, b), w)| ((b.clone(), a.clone()), *w))
        .collect();
    Ok(InteractionNetwork {
        vertices: net.vertices.clone(),
        edges,
        direction_mode: DirectionMode::Status,
    })
}

/// Per-vertex topological measures.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VertexMetric {
    pub in_degree: u64,
    pub out_degree: u64,
    pub degree: u64,
    pub in_strength: u64,
    pub out_strength: u64,
    pub strength: u64,
    pub betweenness: f64,
    pub clustering: f64,
    pub triangles: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VertexMetrics {
    per_vertex: BTreeMap<String, VertexMetric>,
}

impl VertexMetrics {
    pub fn get(&self, author: &str) -> Option<&VertexMetric> {
        self.per_vertex.get(author)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &VertexMetric)> {
        self.per_vertex.iter()
    }

    pub fn len(&self) -> usize {
        self.per_vertex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_vertex.is_empty()
    }
}

/// Degrees and strengths from edge incidence, exact Brandes betweenness on
/// the directed graph with unit-length edges (unnormalized), clustering
/// and triangles on the undirected simplification.
pub fn compute_vertex_metrics(net: &InteractionNetwork) -> Result<VertexMetrics, NetworkError> {
    if net.vertices.is_empty() {
        return Err(NetworkError::EmptyNetwork);
    }
    let ids: Vec<&String> = net.vertices.iter().collect();
    let index: BTreeMap<&String, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = ids.len();

    let mut out_adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    let mut in_adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for ((src, dst), w) in &net.edges {
        let (s, d) = (index[src], index[dst]);
        out_adj[s].push((d, *w));
        in_adj[d].push((s, *w));
    }

    let betweenness = brandes_betweenness(n, &out_adj);

    // undirected simplification for clustering
    let mut und: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for ((src, dst), _) in &net.edges {
        let (s, d) = (index[src], index[dst]);
        if s != d {
            und[s].insert(d);
            und[d].insert(s);
        }
    }

    let mut per_vertex = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        let in_degree = in_adj[i].len() as u64;
        let out_degree = out_adj[i].len() as u64;
        let in_strength: u64 = in_adj[i].iter().map(|(_, w)| w).sum();
        let out_strength: u64 = out_adj[i].iter().map(|(_, w)| w).sum();

        let neighbors: Vec<usize> = und[i].iter().copied().collect();
        let k = neighbors.len();
        let mut tri = 0u64;
        for (a_pos, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[a_pos + 1..] {
                if und[a].contains(&b) {
                    tri += 1;
                }
            }
        }
        let clustering = if k >= 2 {
            2.0 * tri as f64 / (k as f64 * (k as f64 - 1.0))
        } else {
            0.0
        };

        per_vertex.insert(
            (*id).clone(),
            VertexMetric {
                in_degree,
                out_degree,
                degree: in_degree + out_degree,
                in_strength,
                out_strength,
                strength: in_strength + out_strength,
                betweenness: betweenness[i],
                clustering,
                triangles: tri,
            },
        );
    }
    Ok(VertexMetrics { per_vertex })
}

/// Brandes' accumulation over BFS shortest paths, one source at a time.
fn brandes_betweenness(n: usize, out_adj: &[Vec<(usize, u64)>]) -> Vec<f64> {
    let mut bc = vec![0.0; n];
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = std::collections::VecDeque::new();

    for s in 0..n {
        stack.clear();
        queue.clear();
        for v in 0..n {
            preds[v].clear();
            sigma[v] = 0.0;
            dist[v] = -1;
            delta[v] = 0.0;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &(w, _) in &out_adj[v] {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                bc[w] += delta[w];
            }
        }
    }
    bc
}

/// Connectivity sector of an author.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sector {
    Periphery,
    Intermediary,
    Hub,
}

impl Sector {
    pub fn label(self) -> &'static str {
        match self {
            Sector::Periphery => "periphery",
            Sector::Intermediary => "intermediary",
            Sector::Hub => "hub",
        }
    }

    /// Numeric code used in feature matrices: periphery 0, intermediary 1,
    /// hub 2.
    pub fn index(self) -> u8 {
        match self {
            Sector::Periphery => 0,
            Sector::Intermediary => 1,
            Sector::Hub => 2,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Sector::Periphery => "p.",
            Sector::Intermediary => "i.",
            Sector::Hub => "h.",
        }
    }
}

pub const SECTORS: [Sector; 3] = [Sector::Periphery, Sector::Intermediary, Sector::Hub];

/// Hub/intermediary/periphery labels for every author, plus the fractions
/// that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorPartition {
    labels: BTreeMap<String, Sector>,
    pub f_hub: f64,
    pub f_intermediary: f64,
}

impl SectorPartition {
    pub fn from_labels(
        labels: BTreeMap<String, Sector>,
        f_hub: f64,
        f_intermediary: f64,
    ) -> SectorPartition {
        SectorPartition {
            labels,
            f_hub,
            f_intermediary,
        }
    }

    pub fn sector_of(&self, author: &str) -> Option<Sector> {
        self.labels.get(author).copied()
    }

    pub fn labels(&self) -> &BTreeMap<String, Sector> {
        &self.labels
    }

    pub fn f_periphery(&self) -> f64 {
        1.0 - self.f_hub - self.f_intermediary
    }

    pub fn count(&self, sector: Sector) -> usize {
        self.labels.values().filter(|s| **s == sector).count()
    }

    pub fn members(&self, sector: Sector) -> Vec<&String> {
        self.labels
            .iter()
            .filter(|(_, s)| **s == sector)
            .map(|(a, _)| a)
            .collect()
    }

    /// CSV export `author,sector,s` in descending-strength rank order.
    pub fn to_csv(&self, metrics: &VertexMetrics) -> String {
        let mut rows: Vec<(&String, u64)> = self
            .labels
            .keys()
            .map(|a| (a, metrics.get(a).map(|m| m.strength).unwrap_or(0)))
            .collect();
        rows.sort_by(|(a1, s1), (a2, s2)| s2.cmp(s1).then_with(|| a1.cmp(a2)));
        let mut out = String::from("author,sector,s\n");
        for (author, s) in rows {
            out.push_str(&format!("{author},{},{s}\n", self.labels[author].label()));
        }
        out
    }
}

/// Rank vertices by total strength (descending, ties broken by author id
/// ascending) and label the top ceil(f_hub*N) as hubs, the next
/// ceil(f_intermediary*N) as intermediary, the remainder as periphery.
pub fn partition_by_strength(
    metrics: &VertexMetrics,
    f_hub: f64,
    f_intermediary: f64,
) -> Result<SectorPartition, NetworkError> {
    assert!(
        f_hub > 0.0 && f_intermediary >= 0.0 && f_hub + f_intermediary < 1.0,
        "invalid sector fractions"
    );
    let n = metrics.len();
    if n < 3 {
        return Err(NetworkError::DegenerateNetwork(n));
    }
    let mut ranked: Vec<(&String, u64)> = metrics.iter().map(|(a, m)| (a, m.strength)).collect();
    ranked.sort_by(|(a1, s1), (a2, s2)| s2.cmp(s1).then_with(|| a1.cmp(a2)));

    let hub_count = (f_hub * n as f64).ceil() as usize;
    let inter_count = ((f_intermediary * n as f64).ceil() as usize).min(n - hub_count);
    let mut labels = BTreeMap::new();
    for (rank, (author, _)) in ranked.into_iter().enumerate() {
        let sector = if rank < hub_count {
            Sector::Hub
        } else if rank < hub_count + inter_count {
            Sector::Intermediary
        } else {
            Sector::Periphery
        };
        labels.insert(author.clone(), sector);
    }
    Ok(SectorPartition {
        labels,
        f_hub,
        f_intermediary,
    })
}

/// A thread root is a message whose antecedent is absent or dangling.
pub fn count_threads(store: &MessageStore) -> usize {
    store
        .messages()
        .iter()
        .filter(|m| store.parent_of(m).is_none())
        .count()
}

/// Share of participants / messages / thread roots attributed to a sector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SectorShare {
    pub participants: usize,
    pub messages: usize,
    pub threads: usize,
}

/// Global activity summary of one list.
#[derive(Debug, Clone, PartialEq)]
pub struct ListSummary {
    pub participants: usize,
    pub messages: usize,
    pub threads: usize,
    pub span_years: f64,
    pub date_first: Option<chrono::DateTime<chrono::Utc>>,
    pub date_last: Option<chrono::DateTime<chrono::Utc>>,
    pub sector: BTreeMap<Sector, SectorShare>,
}

impl ListSummary {
    pub fn participants_pct(&self, sector: Sector) -> f64 {
        percentage(self.sector[&sector].participants, self.participants)
    }

    pub fn messages_pct(&self, sector: Sector) -> f64 {
        percentage(self.sector[&sector].messages, self.messages)
    }

    pub fn threads_pct(&self, sector: Sector) -> f64 {
        percentage(self.sector[&sector].threads, self.threads)
    }
}

fn percentage(part: usize, whole: usize) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

/// Compute N, M, Gamma, the year span, and per-sector shares of each.
pub fn list_summary(
    store: &MessageStore,
    partition: &SectorPartition,
) -> Result<ListSummary, NetworkError> {
    let mut sector: BTreeMap<Sector, SectorShare> = SECTORS
        .iter()
        .map(|s| (*s, SectorShare::default()))
        .collect();

    for author in store.authors() {
        let s = partition
            .sector_of(&author)
            .ok_or_else(|| NetworkError::PartitionMismatch(author.clone()))?;
        sector.get_mut(&s).unwrap().participants += 1;
    }
    for msg in store.messages() {
        let s = partition
            .sector_of(&msg.author)
            .ok_or_else(|| NetworkError::PartitionMismatch(msg.author.clone()))?;
        sector.get_mut(&s).unwrap().messages += 1;
        if store.parent_of(msg).is_none() {
            sector.get_mut(&s).unwrap().threads += 1;
        }
    }

    let date_first = store.messages().iter().map(|m| m.date).min();
    let date_last = store.messages().iter().map(|m| m.date).max();
    let span_years = match (date_first, date_last) {
        (Some(a), Some(b)) => (b - a).num_seconds() as f64 / (365.25 * 86_400.0),
        _ => 0.0,
    };

    Ok(ListSummary {
        participants: store.authors().len(),
        messages: store.len(),
        threads: count_threads(store),
        span_years,
        date_first,
        date_last,
        sector,
    })
}

/// JSON document with vertices, weighted edges, and per-vertex metrics.
pub fn network_to_json(net: &InteractionNetwork, metrics: &VertexMetrics) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = net
        .edges
        .iter()
        .map(|((src, dst), w)| serde_json::json!({ "src": src, "dst": dst, "weight": w }))
        .collect();
    let metric_map: BTreeMap<&String, serde_json::Value> = metrics
        .iter()
        .map(|(author, m)| {
            (
                author,
                serde_json::json!({
                    "d": m.degree, "d_i": m.in_degree, "d_o": m.out_degree,
                    "s": m.strength, "s_i": m.in_strength, "s_o": m.out_strength,
                    "bc": m.betweenness, "cc": m.clustering, "tri": m.triangles,
                }),
            )
        })
        .collect();
    serde_json::json!({
        "direction": match net.direction_mode {
            DirectionMode::Information => "information",
            DirectionMode::Status => "status",
        },
        "vertices": net.vertices.iter().collect::<Vec<_>>(),
        "edges": edges,
        "metrics": metric_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_jsonl;
    use crate::testutil::brute_force_betweenness;

    fn store_from(lines: &[(&str, Option<&str>, &str)]) -> MessageStore {
        let mut jsonl = String::new();
        for (i, (id, parent, author)) in lines.iter().enumerate() {
            let parent_json = match parent {
                Some(p) => format!("\"{p}\""),
                None => "null".to_string(),
            };
            jsonl.push_str(&format!(
                "{{\"id\":\"{id}\",\"in_reply_to\":{parent_json},\"author\":\"{author}\",\"date\":\"2003-06-0{}T10:00:00Z\",\"body\":\"x\"}}\n",
                (i % 8) + 1,
            ));
        }
        parse_jsonl(jsonl.as_bytes()).unwrap()
    }

    #[test]
    fn single_message_gives_isolated_vertex() {
        let store = store_from(&[("m1", None, "a@x")]);
        let net = build_information_network(&store);
        assert_eq!(net.vertex_count(), 1);
        assert_eq!(net.edge_count(), 0);
    }

    #[test]
    fn reply_creates_edge_from_original_author_to_responder() {
        let store = store_from(&[("m1", None, "a@x"), ("m2", Some("m1"), "b@x")]);
        let net = build_information_network(&store);
        assert_eq!(net.edges()[&("a@x".into(), "b@x".into())], 1);
    }

    #[test]
    fn reply_weights_accumulate_and_strengths_add_up() {
        // m1 by A; m2,m3 by B answering m1; m4 by A answering m2
        let store = store_from(&[
            ("m1", None, "a@x"),
            ("m2", Some("m1"), "b@x"),
            ("m3", Some("m1"), "b@x"),
            ("m4", Some("m2"), "a@x"),
        ]);
        let net = build_information_network(&store);
        assert_eq!(net.edges()[&("a@x".into(), "b@x".into())], 2);
        assert_eq!(net.edges()[&("b@x".into(), "a@x".into())], 1);
        let metrics = compute_vertex_metrics(&net).unwrap();
        let a = metrics.get("a@x").unwrap();
        assert_eq!(a.strength, 3);
        assert_eq!(a.out_strength, 2);
        assert_eq!(a.in_strength, 1);
    }

    #[test]
    fn self_replies_are_skipped() {
        let store = store_from(&[("m1", None, "a@x"), ("m2", Some("m1"), "a@x")]);
        let net = build_information_network(&store);
        assert_eq!(net.edge_count(), 0);
        assert_eq!(net.vertex_count(), 1);
    }

    #[test]
    fn inversion_reverses_edges_and_is_an_involution() {
        let store = store_from(&[
            ("m1", None, "a@x"),
            ("m2", Some("m1"), "b@x"),
            ("m3", Some("m1"), "b@x"),
            ("m4", Some("m2"), "a@x"),
        ]);
        let net = build_information_network(&store);
        let status = invert_to_status_network(&net).unwrap();
        assert_eq!(status.edges()[&("b@x".into(), "a@x".into())], 2);
        assert!(matches!(
            invert_to_status_network(&status),
            Err(NetworkError::AlreadyInverted)
        ));
        // inverting twice restores the original edge multiset
        let mut back = invert_to_status_network(&status).err();
        assert!(back.take().is_some());
        let double = InteractionNetwork {
            direction_mode: DirectionMode::Information,
            ..status.clone()
        };
        let restored = invert_to_status_network(&double).unwrap();
        assert_eq!(restored.edges(), net.edges());
    }

    #[test]
    fn inversion_swaps_in_and_out_but_keeps_totals() {
        let store = store_from(&[
            ("m1", None, "a@x"),
            ("m2", Some("m1"), "b@x"),
            ("m3", Some("m2"), "c@x"),
            ("m4", Some("m1"), "c@x"),
        ]);
        let net = build_information_network(&store);
        let information = compute_vertex_metrics(&net).unwrap();
        let status =
            compute_vertex_metrics(&invert_to_status_network(&net).unwrap()).unwrap();
        for (author, m) in information.iter() {
            let s = status.get(author).unwrap();
            assert_eq!(m.in_degree, s.out_degree);
            assert_eq!(m.out_degree, s.in_degree);
            assert_eq!(m.in_strength, s.out_strength);
            assert_eq!(m.out_strength, s.in_strength);
            assert_eq!(m.degree, s.degree);
            assert_eq!(m.strength, s.strength);
        }
    }

    #[test]
    fn empty_network_has_no_metrics() {
        let net = InteractionNetwork::from_edges(&[], &[], DirectionMode::Information);
        assert!(matches!(
            compute_vertex_metrics(&net),
            Err(NetworkError::EmptyNetwork)
        ));
    }

    #[test]
    fn single_vertex_metrics_are_zero() {
        let net = InteractionNetwork::from_edges(&["a"], &[], DirectionMode::Information);
        let m = compute_vertex_metrics(&net).unwrap();
        let v = m.get("a").unwrap();
        assert_eq!(
            (v.degree, v.strength, v.triangles),
            (0, 0, 0)
        );
        assert_eq!(v.betweenness, 0.0);
        assert_eq!(v.clustering, 0.0);
    }

    #[test]
    fn directed_path_routes_one_pair_through_the_middle() {
        let net = InteractionNetwork::from_edges(
            &[],
            &[("a", "b", 1), ("b", "c", 1)],
            DirectionMode::Information,
        );
        let m = compute_vertex_metrics(&net).unwrap();
        assert_eq!(m.get("b").unwrap().betweenness, 1.0);
        assert_eq!(m.get("a").unwrap().betweenness, 0.0);
        assert_eq!(m.get("c").unwrap().betweenness, 0.0);
    }

    #[test]
    fn bidirected_triangle_has_full_clustering() {
        let net = InteractionNetwork::from_edges(
            &[],
            &[
                ("a", "b", 1),
                ("b", "a", 1),
                ("b", "c", 1),
                ("c", "b", 1),
                ("a", "c", 1),
                ("c", "a", 1),
            ],
            DirectionMode::Information,
        );
        let m = compute_vertex_metrics(&net).unwrap();
        for v in ["a", "b", "c"] {
            assert_eq!(m.get(v).unwrap().clustering, 1.0);
            assert_eq!(m.get(v).unwrap().triangles, 1);
        }
    }

    #[test]
    fn brandes_matches_brute_force_on_small_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(2..=6);
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(0.4) {
                        edges.push((names[i].as_str(), names[j].as_str(), 1));
                    }
                }
            }
            let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let net = InteractionNetwork::from_edges(
                &name_refs,
                &edges,
                DirectionMode::Information,
            );
            let metrics = compute_vertex_metrics(&net).unwrap();
            let oracle = brute_force_betweenness(&net);
            for (author, expected) in oracle {
                let got = metrics.get(&author).unwrap().betweenness;
                assert!(
                    (got - expected).abs() < 1e-9,
                    "bc mismatch for {author}: {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn conservation_of_replies() {
        let store = store_from(&[
            ("m1", None, "a@x"),
            ("m2", Some("m1"), "b@x"),
            ("m3", Some("m1"), "c@x"),
            ("m4", Some("m3"), "a@x"),
            ("m5", Some("m4"), "c@x"),
        ]);
        let net = build_information_network(&store);
        let metrics = compute_vertex_metrics(&net).unwrap();
        let total_in: u64 = metrics.iter().map(|(_, m)| m.in_strength).sum();
        let total_out: u64 = metrics.iter().map(|(_, m)| m.out_strength).sum();
        let replies = store
            .messages()
            .iter()
            .filter(|m| store.parent_of(m).map(|p| p.author != m.author).unwrap_or(false))
            .count() as u64;
        assert_eq!(total_in, replies);
        assert_eq!(total_out, replies);
    }

    fn metrics_with_strengths(strengths: &[(&str, u64)]) -> VertexMetrics {
        let per_vertex = strengths
            .iter()
            .map(|(a, s)| {
                (
                    a.to_string(),
                    VertexMetric {
                        strength: *s,
                        ..Default::default()
                    },
                )
            })
            .collect();
        VertexMetrics { per_vertex }
    }

    #[test]
    fn default_fractions_on_100_vertices_give_5_15_80() {
        let strengths: Vec<(String, u64)> =
            (0..100).map(|i| (format!("a{i:03}"), 1000 - i as u64)).collect();
        let refs: Vec<(&str, u64)> = strengths.iter().map(|(a, s)| (a.as_str(), *s)).collect();
        let metrics = metrics_with_strengths(&refs);
        let p = partition_by_strength(&metrics, 0.05, 0.15).unwrap();
        assert_eq!(p.count(Sector::Hub), 5);
        assert_eq!(p.count(Sector::Intermediary), 15);
        assert_eq!(p.count(Sector::Periphery), 80);
    }

    #[test]
    fn seven_vertices_with_ties_split_3_3_1() {
        let metrics = metrics_with_strengths(&[
            ("a", 10),
            ("b", 9),
            ("c", 8),
            ("d", 3),
            ("e", 3),
            ("f", 2),
            ("g", 1),
        ]);
        let p = partition_by_strength(&metrics, 0.3, 0.3).unwrap();
        assert_eq!(p.count(Sector::Hub), 3);
        assert_eq!(p.count(Sector::Intermediary), 3);
        assert_eq!(p.count(Sector::Periphery), 1);
        for hub in ["a", "b", "c"] {
            assert_eq!(p.sector_of(hub), Some(Sector::Hub));
        }
        // tie at strength 3 broken by id: d and e are both intermediary here,
        // and g (lowest strength) is the single peripheral vertex
        assert_eq!(p.sector_of("g"), Some(Sector::Periphery));
    }

    #[test]
    fn full_tie_falls_back_to_id_order() {
        let metrics = metrics_with_strengths(&[("a", 5), ("b", 5), ("c", 5), ("d", 5)]);
        let p = partition_by_strength(&metrics, 0.25, 0.25).unwrap();
        assert_eq!(p.sector_of("a"), Some(Sector::Hub));
        assert_eq!(p.sector_of("b"), Some(Sector::Intermediary));
        assert_eq!(p.sector_of("c"), Some(Sector::Periphery));
        assert_eq!(p.sector_of("d"), Some(Sector::Periphery));
    }

    #[test]
    fn tiny_networks_cannot_be_partitioned() {
        let metrics = metrics_with_strengths(&[("a", 1), ("b", 2)]);
        assert!(matches!(
            partition_by_strength(&metrics, 0.05, 0.15),
            Err(NetworkError::DegenerateNetwork(2))
        ));
    }

    #[test]
    fn thread_counting_follows_resolvable_antecedents() {
        let isolated = store_from(&[("m1", None, "a@x"), ("m2", None, "b@x"), ("m3", None, "c@x")]);
        assert_eq!(count_threads(&isolated), 3);
        let chain = store_from(&[("m1", None, "a@x"), ("m2", Some("m1"), "b@x"), ("m3", Some("m2"), "c@x")]);
        assert_eq!(count_threads(&chain), 1);
        let dangling = store_from(&[("m1", None, "a@x"), ("m2", Some("zz"), "b@x")]);
        assert_eq!(count_threads(&dangling), 2);
    }

    #[test]
    fn summary_for_single_author_store() {
        let store = store_from(&[
            ("m1", None, "a@x"),
            ("m2", Some("m1"), "a@x"),
            ("m3", None, "a@x"),
            ("m4", Some("m3"), "a@x"),
        ]);
        let labels: BTreeMap<String, Sector> =
            [("a@x".to_string(), Sector::Hub)].into_iter().collect();
        let partition = SectorPartition {
            labels,
            f_hub: 0.05,
            f_intermediary: 0.15,
        };
        let summary = list_summary(&store, &partition).unwrap();
        assert_eq!(summary.messages, 4);
        assert_eq!(summary.threads, 2);
        assert_eq!(summary.messages_pct(Sector::Hub), 100.0);
        assert_eq!(summary.messages_pct(Sector::Periphery), 0.0);
    }

    #[test]
    fn summary_percentages_on_three_author_fixture() {
        let store = store_from(&[
            ("m1", None, "a@x"),
            ("m2", Some("m1"), "b@x"),
            ("m3", Some("m1"), "b@x"),
            ("m4", Some("m2"), "a@x"),
            ("m5", None, "c@x"),
        ]);
        let labels: BTreeMap<String, Sector> = [
            ("a@x".to_string(), Sector::Hub),
            ("b@x".to_string(), Sector::Intermediary),
            ("c@x".to_string(), Sector::Periphery),
        ]
        .into_iter()
        .collect();
        let partition = SectorPartition {
            labels,
            f_hub: 0.34,
            f_intermediary: 0.33,
        };
        let summary = list_summary(&store, &partition).unwrap();
        assert_eq!(summary.participants, 3);
        assert_eq!(summary.messages, 5);
        assert_eq!(summary.threads, 2);
        assert_eq!(summary.messages_pct(Sector::Hub), 40.0);
        assert_eq!(summary.messages_pct(Sector::Intermediary), 40.0);
        assert_eq!(summary.messages_pct(Sector::Periphery), 20.0);
        assert_eq!(summary.threads_pct(Sector::Hub), 50.0);
        let pct_sum: f64 = SECTORS.iter().map(|s| summary.participants_pct(*s)).sum();
        assert!((pct_sum - 100.0).abs() < 0.01);
    }

    #[test]
    fn partition_mismatch_is_reported() {
        let store = store_from(&[("m1", None, "a@x"), ("m2", None, "b@x")]);
        let labels: BTreeMap<String, Sector> =
            [("a@x".to_string(), Sector::Hub)].into_iter().collect();
        let partition = SectorPartition {
            labels,
            f_hub: 0.5,
            f_intermediary: 0.2,
        };
        match list_summary(&store, &partition) {
            Err(NetworkError::PartitionMismatch(author)) => assert_eq!(author, "b@x"),
            other => panic!("expected PartitionMismatch, got {other:?}"),
        }
    }

    #[test]
    fn edge_list_export_is_sorted_and_tab_separated() {
        let net = InteractionNetwork::from_edges(
            &[],
            &[("b", "c", 2), ("a", "b", 1)],
            DirectionMode::Information,
        );
        assert_eq!(net.to_edge_list_tsv(), "a\tb\t1\nb\tc\t2\n");
    }
}
