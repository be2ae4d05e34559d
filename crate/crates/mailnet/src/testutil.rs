//! Helpers shared by unit, integration, and acceptance tests.

use crate::lexicon::Lexicon;
use crate::network::InteractionNetwork;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Path to the lexicon manifest shipped with the repository.
pub fn shipped_manifest_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../resources/lexicon/manifest")
        .canonicalize()
        .expect("shipped lexicon resources present")
}

/// Load the shipped lexicon, verifying manifest hashes.
pub fn shipped_lexicon() -> Lexicon {
    Lexicon::load_from_manifest(&shipped_manifest_path()).expect("shipped lexicon loads")
}

/// Build a throwaway lexicon from word lists, for tests that need tight
/// control over membership. Files are written to a temp dir that leaks for
/// the duration of the process.
pub fn lexicon_from_parts(
    words: &[&str],
    stopwords: &[&str],
    contractions: &[&str],
    synset_words: &[&str],
    tags: &[(&str, &str)],
) -> Lexicon {
    use std::io::Write;
    let dir = std::env::temp_dir().join(format!(
        "mailnet-lex-{}-{:x}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    std::fs::create_dir_all(dir.join("wordnet")).unwrap();
    let write = |name: &str, lines: &[&str]| {
        let mut f = std::fs::File::create(dir.join(name)).unwrap();
        for l in lines {
            writeln!(f, "{l}").unwrap();
        }
    };
    write("words.txt", words);
    write("stopwords.txt", stopwords);
    write("contractions.txt", contractions);
    {
        let mut f = std::fs::File::create(dir.join("tags.tsv")).unwrap();
        for (w, t) in tags {
            writeln!(f, "{w}\t{t}").unwrap();
        }
    }
    for idx in ["index.noun", "index.verb", "index.adj", "index.adv"] {
        let mut f = std::fs::File::create(dir.join("wordnet").join(idx)).unwrap();
        if idx == "index.noun" {
            for w in synset_words {
                writeln!(f, "{w} n 1 1 @ 1 0 00000000").unwrap();
            }
        }
    }
    Lexicon::load(&crate::lexicon::LexiconPaths {
        wordlist: dir.join("words.txt"),
        stopwords: dir.join("stopwords.txt"),
        contractions: dir.join("contractions.txt"),
        tags: dir.join("tags.tsv"),
        wordnet_dir: dir.join("wordnet"),
    })
    .unwrap()
}

/// Pair-dependency betweenness by exhaustive simple-path enumeration.
/// Exponential, only for tiny oracle graphs; deliberately shares nothing
/// with the production BFS accumulation.
pub fn brute_force_betweenness(net: &InteractionNetwork) -> BTreeMap<String, f64> {
    let ids: Vec<&String> = net.vertices().iter().collect();
    let n = ids.len();
    let index: BTreeMap<&String, usize> = ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut adj = vec![Vec::new(); n];
    for ((src, dst), _) in net.edges() {
        adj[index[src]].push(index[dst]);
    }

    fn all_paths(
        adj: &[Vec<usize>],
        current: usize,
        target: usize,
        visited: &mut Vec<bool>,
        path: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if current == target {
            found.push(path.clone());
            return;
        }
        for &next in &adj[current] {
            if !visited[next] {
                visited[next] = true;
                path.push(next);
                all_paths(adj, next, target, visited, path, found);
                path.pop();
                visited[next] = false;
            }
        }
    }

    let mut bc = vec![0.0f64; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let mut found = Vec::new();
            let mut visited = vec![false; n];
            visited[s] = true;
            all_paths(&adj, s, t, &mut visited, &mut vec![s], &mut found);
            let shortest = match found.iter().map(Vec::len).min() {
                Some(len) => len,
                None => continue,
            };
            let shortest_paths: Vec<&Vec<usize>> =
                found.iter().filter(|p| p.len() == shortest).collect();
            let sigma = shortest_paths.len() as f64;
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = shortest_paths
                    .iter()
                    .filter(|p| p[1..p.len() - 1].contains(&v))
                    .count() as f64;
                bc[v] += through / sigma;
            }
        }
    }
    ids.iter()
        .enumerate()
        .map(|(i, id)| ((*id).clone(), bc[i]))
        .collect()
}
