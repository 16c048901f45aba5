/// Resource caps shared across window construction and clique enumeration.
///
/// Exceeding a cap is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum BFS radius for word length and ball generation.
    pub radius: u32,
    /// Maximum number of maximal cliques enumerated per graph.
    pub clique: usize,
    /// Maximum number of window vertices for kernel completion.
    pub window_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            radius: 64,
            clique: 10_000,
            window_vertices: 5_000,
        }
    }
}

impl Caps {
    /// Parses the `CHORDAL_EXTEND_CAPS` format: comma-separated
    /// `radius=..`, `clique=..`, `window=..` entries, e.g. `radius=128,clique=20000`.
    pub fn from_env_str(s: &str) -> Option<Caps> {
        let mut caps = Caps::default();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part.split_once('=')?;
            match key.trim() {
                "radius" => caps.radius = value.trim().parse().ok()?,
                "clique" => caps.clique = value.trim().parse().ok()?,
                "window" => caps.window_vertices = value.trim().parse().ok()?,
                _ => return None,
            }
        }
        Some(caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_parsing() {
        let caps = Caps::from_env_str("radius=128,clique=20000").unwrap();
        assert_eq!(caps.radius, 128);
        assert_eq!(caps.clique, 20_000);
        assert_eq!(caps.window_vertices, Caps::default().window_vertices);
        assert!(Caps::from_env_str("bogus=1").is_none());
    }
}
