use rand::seq::{index, IndexedRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::BenchError;
use crate::sections::{
    Constraint, ConstraintSpec, HeaderFamily, Language, TaskProfile, ValidatorKind, DEFAULT_THEME_MIN_MATCHES,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Story,
    Dialogue,
    Diary,
    Architecture,
    CodeFunction,
    UserInfo,
    CompanyInfo,
    MathFormula,
}

impl Task {
    pub const ALL: [Task; 8] = [
        Task::Story,
        Task::Dialogue,
        Task::Diary,
        Task::Architecture,
        Task::CodeFunction,
        Task::UserInfo,
        Task::CompanyInfo,
        Task::MathFormula,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Task::Story => "story",
            Task::Dialogue => "dialogue",
            Task::Diary => "diary",
            Task::Architecture => "architecture",
            Task::CodeFunction => "code_function",
            Task::UserInfo => "user_info",
            Task::CompanyInfo => "company_info",
            Task::MathFormula => "math_formula",
        }
    }

    /// Output is checked by a structural validator rather than free-text constraints.
    pub fn is_structured(self) -> bool {
        self.validator() != ValidatorKind::None
    }

    pub fn validator(self) -> ValidatorKind {
        match self {
            Task::CodeFunction => ValidatorKind::CodeFunction,
            Task::UserInfo => ValidatorKind::UserRecord,
            Task::CompanyInfo => ValidatorKind::CompanyRecord,
            Task::MathFormula => ValidatorKind::LatexEquation,
            _ => ValidatorKind::None,
        }
    }

    pub fn header_family(self) -> HeaderFamily {
        match self {
            Task::Story => HeaderFamily::Chapter,
            Task::Dialogue => HeaderFamily::Round,
            Task::Diary => HeaderFamily::Day,
            Task::Architecture => HeaderFamily::Floor,
            Task::CodeFunction => HeaderFamily::FunctionComment,
            Task::UserInfo | Task::CompanyInfo => HeaderFamily::RecordIndex,
            Task::MathFormula => HeaderFamily::FormulaComment,
        }
    }

    pub fn profile(self, language: Language) -> TaskProfile {
        TaskProfile { family: self.header_family(), validator: self.validator(), language }
    }

    /// Word used for one section in constraint clauses.
    pub(super) fn section_noun(self) -> &'static str {
        match self {
            Task::Story => "Chapter",
            Task::Dialogue => "Round",
            Task::Diary => "Day",
            Task::Architecture => "Floor",
            Task::CodeFunction => "Function",
            Task::UserInfo | Task::CompanyInfo => "Profile",
            Task::MathFormula => "Formula",
        }
    }
}

impl std::fmt::Display for Task {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for Task {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Task::ALL
            .into_iter()
            .find(|t| t.id() == s.trim())
            .ok_or_else(|| BenchError::TemplateMissing(format!("no template for task `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Complexity {
    Simple,
    Complex,
    FineGrained,
}

impl Complexity {
    pub const ALL: [Complexity; 3] = [Complexity::Simple, Complexity::Complex, Complexity::FineGrained];

    pub fn id(self) -> &'static str {
        match self {
            Complexity::Simple => "simple",
            Complexity::Complex => "complex",
            Complexity::FineGrained => "fine_grained",
        }
    }
}

impl std::str::FromStr for Complexity {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Complexity::ALL
            .into_iter()
            .find(|c| c.id() == s.trim())
            .ok_or_else(|| BenchError::InvalidConfig(format!("unknown complexity `{s}`")))
    }
}

/// Supported section counts and how many sections carry constraints at each.
pub const SCALES: [(usize, usize); 7] = [(5, 1), (10, 2), (20, 5), (50, 10), (100, 20), (200, 40), (500, 100)];

pub const DEFAULT_WORDS_PER_SECTION: usize = 200;

pub fn designated_sections(scale: usize) -> Option<usize> {
    SCALES.iter().find(|(s, _)| *s == scale).map(|&(_, d)| d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSpec {
    pub task: Task,
    pub language: Language,
    pub complexity: Complexity,
    pub num_sections: usize,
    pub words_per_section: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<ConstraintSpec>,
}

impl PromptSpec {
    pub fn new(task: Task, language: Language, complexity: Complexity, num_sections: usize) -> Self {
        PromptSpec {
            task,
            language,
            complexity,
            num_sections,
            words_per_section: DEFAULT_WORDS_PER_SECTION,
            constraints: Vec::new(),
        }
    }

    /// Stable identifier such as `story-EN-simple-100x200`.
    pub fn id(&self) -> String {
        format!(
            "{}-{}-{}-{}x{}",
            self.task.id(),
            self.language,
            self.complexity.id(),
            self.num_sections,
            self.words_per_section
        )
    }

    /// Requested document length in words.
    pub fn target_words(&self) -> usize {
        self.num_sections * self.words_per_section
    }

    pub fn profile(&self) -> TaskProfile {
        self.task.profile(self.language)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixConfig {
    pub tasks: Vec<Task>,
    pub languages: Vec<Language>,
    pub complexities: Vec<Complexity>,
    pub scales: Vec<usize>,
    pub words_per_section: usize,
    /// Seeds the constraint draws.
    pub seed: u64,
}

impl Default for MatrixConfig {
    fn default() -> Self {
        MatrixConfig {
            tasks: Task::ALL.to_vec(),
            languages: vec![Language::En, Language::Ch],
            complexities: Complexity::ALL.to_vec(),
            scales: SCALES.iter().map(|&(s, _)| s).collect(),
            words_per_section: DEFAULT_WORDS_PER_SECTION,
            seed: 0,
        }
    }
}

const LETTERS: &[char] = &['A', 'B', 'C', 'D', 'F', 'G', 'H', 'L', 'M', 'N', 'P', 'R', 'S', 'T', 'W'];

const KEYWORDS_EN: &[&str] = &[
    "apple",
    "lantern",
    "compass",
    "violin",
    "harbor",
    "meteor",
    "bicycle",
    "telescope",
    "garden",
    "umbrella",
    "feather",
    "mirror",
    "bridge",
    "candle",
    "clock",
    "river",
    "ladder",
    "postcard",
    "kettle",
    "anchor",
];

const KEYWORDS_CH: &[&str] = &[
    "苹果",
    "灯笼",
    "指南针",
    "小提琴",
    "港口",
    "流星",
    "自行车",
    "望远镜",
    "花园",
    "雨伞",
    "羽毛",
    "镜子",
    "桥梁",
    "蜡烛",
    "时钟",
    "河流",
    "梯子",
    "明信片",
    "水壶",
    "船锚",
];

type Theme = (&'static str, &'static [&'static str]);

const THEMES_EN: &[Theme] = &[
    ("autumn harvest", &["harvest", "orchard", "cider", "autumn", "grain", "barn"]),
    ("sea voyage", &["ship", "sail", "waves", "captain", "harbor", "storm"]),
    ("winter festival", &["snow", "lights", "feast", "music", "winter", "gifts"]),
    ("scientific discovery", &["experiment", "laboratory", "data", "hypothesis", "result", "research"]),
    ("mountain journey", &["mountain", "trail", "summit", "climb", "camp", "peak"]),
    ("city market", &["market", "vendor", "stall", "bargain", "crowd", "spices"]),
];

const THEMES_CH: &[Theme] = &[
    ("秋收", &["丰收", "果园", "苹果酒", "秋天", "粮食", "谷仓"]),
    ("航海", &["船", "帆", "海浪", "船长", "港口", "风暴"]),
    ("冬日节庆", &["雪", "灯火", "宴会", "音乐", "冬天", "礼物"]),
    ("科学发现", &["实验", "实验室", "数据", "假设", "结果", "研究"]),
    ("登山之旅", &["山", "小路", "山顶", "攀登", "营地", "山峰"]),
    ("城市集市", &["集市", "小贩", "摊位", "讨价还价", "人群", "香料"]),
];

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Draws the designated sections and their three constraints for a spec.
pub fn draw_constraints(spec: &PromptSpec, seed: u64) -> Result<Vec<ConstraintSpec>, BenchError> {
    let count = designated_sections(spec.num_sections)
        .ok_or_else(|| BenchError::InvalidConfig(format!("unsupported scale {}", spec.num_sections)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(spec.id().as_bytes()));
    let (keywords, themes) = match spec.language {
        Language::En => (KEYWORDS_EN, THEMES_EN),
        Language::Ch => (KEYWORDS_CH, THEMES_CH),
    };
    let mut labels: Vec<usize> = index::sample(&mut rng, spec.num_sections, count).into_iter().map(|i| i + 1).collect();
    labels.sort_unstable();
    let mut out = Vec::with_capacity(3 * count);
    for label in labels {
        let section_index = label as u64;
        let letter = *LETTERS.choose(&mut rng).expect("non-empty");
        let word = keywords.choose(&mut rng).expect("non-empty").to_string();
        let (name, theme_words) = *themes.choose(&mut rng).expect("non-empty");
        out.push(ConstraintSpec { section_index, constraint: Constraint::FirstChar { letter } });
        out.push(ConstraintSpec { section_index, constraint: Constraint::Keyword { word } });
        out.push(ConstraintSpec {
            section_index,
            constraint: Constraint::Theme {
                name: name.to_string(),
                keywords: theme_words.iter().map(|s| s.to_string()).collect(),
                min_matches: DEFAULT_THEME_MIN_MATCHES,
            },
        });
    }
    Ok(out)
}

/// Cartesian product of the configured axes. Fine-grained constraints only apply
/// to free-text tasks, so structured tasks skip that complexity level.
pub fn expand_matrix(config: &MatrixConfig) -> Result<Vec<PromptSpec>, BenchError> {
    if config.words_per_section == 0 {
        return Err(BenchError::InvalidConfig("words_per_section must be positive".into()));
    }
    if let Some(s) = config.scales.iter().find(|s| designated_sections(**s).is_none()) {
        return Err(BenchError::InvalidConfig(format!(
            "unsupported scale {s}; expected one of {:?}",
            SCALES.iter().map(|p| p.0).collect::<Vec<_>>()
        )));
    }
    let mut specs = Vec::new();
    for &task in &config.tasks {
        for &language in &config.languages {
            for &complexity in &config.complexities {
                if complexity == Complexity::FineGrained && task.is_structured() {
                    continue;
                }
                for &num_sections in &config.scales {
                    let mut spec = PromptSpec::new(task, language, complexity, num_sections);
                    spec.words_per_section = config.words_per_section;
                    if complexity == Complexity::FineGrained {
                        spec.constraints = draw_constraints(&spec, config.seed)?;
                    }
                    specs.push(spec);
                }
            }
        }
    }
    Ok(specs)
}
