use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::augment::original_id;
use super::{Pair, PairMode};
use crate::corpus::{Song, Split};
use crate::genre::GenreTag;

/// Targets for one split's pair set. Defaults follow the reference training
/// split: 965 pairs, 56.58% per-genre, 55.49% / 40.10% same-author.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PairSetSpec {
    pub total_pairs: usize,
    pub per_genre_fraction: f64,
    pub same_author_fraction_per_genre: f64,
    pub same_author_fraction_cross_genre: f64,
    /// Caps on pairs attributed to a genre (a cross-genre pair counts for both).
    pub genre_quotas: BTreeMap<GenreTag, usize>,
    /// Allowed relative deviation of a family count from its target.
    pub tolerance: f64,
    pub seed: u64,
    /// Whether augmented copies may pair with their own original or siblings.
    pub pair_augmented_with_original: bool,
}

impl Default for PairSetSpec {
    fn default() -> Self {
        Self {
            total_pairs: 965,
            per_genre_fraction: 0.5658,
            same_author_fraction_per_genre: 0.5549,
            same_author_fraction_cross_genre: 0.4010,
            genre_quotas: BTreeMap::new(),
            tolerance: 0.05,
            seed: 0,
            pair_augmented_with_original: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("{name} must be in (0, 1), got {value}")]
    Fraction { name: &'static str, value: f64 },
    #[error("tolerance must be finite and >= 0, got {0}")]
    Tolerance(f64),
    #[error("song {0} has no genre tags")]
    Untagged(String),
    #[error("duplicate song id {0}")]
    DuplicateSong(String),
}

impl PairSetSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        for (name, value) in [
            ("per_genre_fraction", self.per_genre_fraction),
            ("same_author_fraction_per_genre", self.same_author_fraction_per_genre),
            (
                "same_author_fraction_cross_genre",
                self.same_author_fraction_cross_genre,
            ),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(SpecError::Fraction { name, value });
            }
        }
        if !(self.tolerance.is_finite() && self.tolerance >= 0.0) {
            return Err(SpecError::Tolerance(self.tolerance));
        }
        Ok(())
    }

    /// Target counts per family, in processing order.
    pub fn family_targets(&self) -> [(FamilyKind, usize); 4] {
        let per_genre = (self.total_pairs as f64 * self.per_genre_fraction).round() as usize;
        let cross = self.total_pairs - per_genre.min(self.total_pairs);
        let pg_same = (per_genre as f64 * self.same_author_fraction_per_genre).round() as usize;
        let cg_same = (cross as f64 * self.same_author_fraction_cross_genre).round() as usize;
        [
            (FamilyKind::new(PairMode::PerGenre, 1), pg_same),
            (FamilyKind::new(PairMode::CrossGenre, 1), cg_same),
            (FamilyKind::new(PairMode::PerGenre, 0), per_genre - pg_same),
            (FamilyKind::new(PairMode::CrossGenre, 0), cross - cg_same),
        ]
    }
}

/// One of the four pair families: mode × label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyKind {
    pub mode: PairMode,
    pub label: u8,
}

impl FamilyKind {
    pub fn new(mode: PairMode, label: u8) -> Self {
        Self { mode, label }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let author = if self.label == 1 {
            "same-author"
        } else {
            "different-author"
        };
        write!(f, "{} {author}", self.mode)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PairWarning {
    /// A genre present in the corpus cannot form any pair of this family.
    NoSupply { family: FamilyKind, genre: GenreTag },
    /// The family count missed its target by more than the tolerance.
    Shortfall {
        family: FamilyKind,
        target: usize,
        achieved: usize,
    },
}

impl fmt::Display for PairWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairWarning::NoSupply { family, genre } => write!(f, "no feasible {family} pairs for {genre}"),
            PairWarning::Shortfall {
                family,
                target,
                achieved,
            } => write!(f, "{family}: {achieved} pairs against a target of {target}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairBuild {
    pub pairs: Vec<Pair>,
    pub warnings: Vec<PairWarning>,
}

type Mask = u8;

fn mask_of(tags: &[GenreTag]) -> Mask {
    tags.iter().fold(0, |m, t| m | (1 << t.index()))
}

fn tags_in(mask: Mask) -> impl Iterator<Item = GenreTag> {
    GenreTag::ALL.into_iter().filter(move |t| mask & (1 << t.index()) != 0)
}

#[derive(Clone, Copy)]
struct Candidate {
    a: u32,
    b: u32,
    label: u8,
    a_mask: Mask,
    b_mask: Mask,
}

impl Candidate {
    fn per_genre_options(&self) -> Vec<Vec<GenreTag>> {
        tags_in(self.a_mask & self.b_mask).map(|t| vec![t]).collect()
    }

    /// `[tag of a, tag of b]` options. Songs with identical tag sets are not
    /// cross-genre; tags exclusive to each side are preferred when available.
    fn cross_genre_options(&self) -> Vec<Vec<GenreTag>> {
        if self.a_mask == self.b_mask {
            return Vec::new();
        }
        let only_a = self.a_mask & !self.b_mask;
        let only_b = self.b_mask & !self.a_mask;
        let (from_a, from_b) = if only_a != 0 && only_b != 0 {
            (only_a, only_b)
        } else {
            (self.a_mask, self.b_mask)
        };
        let mut options = Vec::new();
        for ta in tags_in(from_a) {
            for tb in tags_in(from_b) {
                if ta != tb {
                    options.push(vec![ta, tb]);
                }
            }
        }
        options
    }

    fn options(&self, mode: PairMode) -> Vec<Vec<GenreTag>> {
        match mode {
            PairMode::PerGenre => self.per_genre_options(),
            PairMode::CrossGenre => self.cross_genre_options(),
        }
    }
}

struct Tally<'a> {
    quotas: &'a BTreeMap<GenreTag, usize>,
    overall: [usize; 5],
}

impl Tally<'_> {
    fn permits(&self, option: &[GenreTag]) -> bool {
        option
            .iter()
            .all(|t| self.quotas.get(t).is_none_or(|&cap| self.overall[t.index()] < cap))
    }
}

#[allow(clippy::too_many_arguments)]
fn emit(
    cand: &Candidate,
    option: Vec<GenreTag>,
    family: FamilyKind,
    split: Split,
    songs: &[Song],
    family_counts: &mut [usize; 5],
    tally: &mut Tally,
    pairs: &mut Vec<Pair>,
) {
    for t in &option {
        family_counts[t.index()] += 1;
        tally.overall[t.index()] += 1;
    }
    pairs.push(Pair {
        a_id: songs[cand.a as usize].id.clone(),
        b_id: songs[cand.b as usize].id.clone(),
        label: family.label,
        mode: family.mode,
        genres: option,
        split,
    });
}

/// Samples the four pair families from `songs` toward the spec's targets.
///
/// Every genre with supply gets at least one pair in every family; the rest
/// is filled by seeded sampling without replacement. Unordered pairs are
/// never repeated and no song pairs with itself.
pub fn build_pairs(songs: &[Song], spec: &PairSetSpec, split: Split) -> Result<PairBuild, SpecError> {
    spec.validate()?;
    let mut ids = HashSet::new();
    for song in songs {
        if !ids.insert(song.id.as_str()) {
            return Err(SpecError::DuplicateSong(song.id.clone()));
        }
        if song.genres.is_empty() {
            return Err(SpecError::Untagged(song.id.clone()));
        }
    }

    let masks: Vec<Mask> = songs.iter().map(|s| mask_of(&s.genres)).collect();
    let corpus_mask = masks.iter().fold(0, |m, &x| m | x);
    let mut candidates = Vec::new();
    for i in 0..songs.len() {
        for j in i + 1..songs.len() {
            if !spec.pair_augmented_with_original && original_id(&songs[i].id) == original_id(&songs[j].id) {
                continue;
            }
            candidates.push(Candidate {
                a: i as u32,
                b: j as u32,
                label: u8::from(songs[i].shares_lyricist(&songs[j])),
                a_mask: masks[i],
                b_mask: masks[j],
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut used = vec![false; candidates.len()];
    let mut tally = Tally {
        quotas: &spec.genre_quotas,
        overall: [0; 5],
    };
    let mut pairs = Vec::new();
    let mut warnings = Vec::new();

    for (family, target) in spec.family_targets() {
        let mut pool: Vec<usize> = (0..candidates.len())
            .filter(|&c| candidates[c].label == family.label && !candidates[c].options(family.mode).is_empty())
            .collect();
        pool.shuffle(&mut rng);

        let mut family_counts = [0usize; 5];
        let mut emitted = 0;

        for genre in tags_in(corpus_mask) {
            let has_supply = pool
                .iter()
                .any(|&c| candidates[c].options(family.mode).iter().any(|o| o.contains(&genre)));
            if !has_supply {
                warnings.push(PairWarning::NoSupply { family, genre });
                continue;
            }
            if target == 0 || family_counts[genre.index()] > 0 {
                continue;
            }
            let pick = pool.iter().find_map(|&c| {
                if used[c] {
                    return None;
                }
                candidates[c]
                    .options(family.mode)
                    .into_iter()
                    .filter(|o| o.contains(&genre) && tally.permits(o))
                    .min_by_key(|o| o.iter().map(|t| family_counts[t.index()]).sum::<usize>())
                    .map(|o| (c, o))
            });
            if let Some((c, option)) = pick {
                emit(
                    &candidates[c],
                    option,
                    family,
                    split,
                    songs,
                    &mut family_counts,
                    &mut tally,
                    &mut pairs,
                );
                used[c] = true;
                emitted += 1;
            }
        }

        for &c in &pool {
            if emitted >= target {
                break;
            }
            if used[c] {
                continue;
            }
            let choice = candidates[c]
                .options(family.mode)
                .into_iter()
                .filter(|o| tally.permits(o))
                .min_by_key(|o| o.iter().map(|t| family_counts[t.index()]).sum::<usize>());
            if let Some(option) = choice {
                emit(
                    &candidates[c],
                    option,
                    family,
                    split,
                    songs,
                    &mut family_counts,
                    &mut tally,
                    &mut pairs,
                );
                used[c] = true;
                emitted += 1;
            }
        }

        let slack = (spec.tolerance * target as f64).floor() as usize;
        if emitted.abs_diff(target) > slack {
            warnings.push(PairWarning::Shortfall {
                family,
                target,
                achieved: emitted,
            });
        }
    }

    Ok(PairBuild { pairs, warnings })
}
