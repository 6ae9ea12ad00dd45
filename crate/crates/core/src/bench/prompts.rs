use super::matrix::{Complexity, PromptSpec, Task};
use super::{templates_ch as ch, templates_en as en, BenchError};
use crate::sections::{Constraint, Language};

const STARTED: &str = "\n\n*** started ***\n\n";

fn english(task: Task, complex: bool) -> &'static str {
    match (task, complex) {
        (Task::Story, false) => en::STORY_SIMPLE,
        (Task::Story, true) => en::STORY_COMPLEX,
        (Task::Dialogue, false) => en::DIALOGUE_SIMPLE,
        (Task::Dialogue, true) => en::DIALOGUE_COMPLEX,
        (Task::Diary, false) => en::DIARY_SIMPLE,
        (Task::Diary, true) => en::DIARY_COMPLEX,
        (Task::Architecture, false) => en::ARCHITECTURE_SIMPLE,
        (Task::Architecture, true) => en::ARCHITECTURE_COMPLEX,
        (Task::CodeFunction, false) => en::CODE_FUNCTION_SIMPLE,
        (Task::CodeFunction, true) => en::CODE_FUNCTION_COMPLEX,
        (Task::UserInfo, false) => en::USER_INFO_SIMPLE,
        (Task::UserInfo, true) => en::USER_INFO_COMPLEX,
        (Task::CompanyInfo, false) => en::COMPANY_INFO_SIMPLE,
        (Task::CompanyInfo, true) => en::COMPANY_INFO_COMPLEX,
        (Task::MathFormula, false) => en::MATH_FORMULA_SIMPLE,
        (Task::MathFormula, true) => en::MATH_FORMULA_COMPLEX,
    }
}

fn chinese_body(task: Task, complex: bool) -> &'static str {
    match (task, complex) {
        (Task::Story, false) => ch::STORY_SIMPLE,
        (Task::Story, true) => ch::STORY_COMPLEX,
        (Task::Dialogue, false) => ch::DIALOGUE_SIMPLE,
        (Task::Dialogue, true) => ch::DIALOGUE_COMPLEX,
        (Task::Diary, false) => ch::DIARY_SIMPLE,
        (Task::Diary, true) => ch::DIARY_COMPLEX,
        (Task::Architecture, false) => ch::ARCHITECTURE_SIMPLE,
        (Task::Architecture, true) => ch::ARCHITECTURE_COMPLEX,
        (Task::CodeFunction, false) => ch::CODE_FUNCTION_SIMPLE,
        (Task::CodeFunction, true) => ch::CODE_FUNCTION_COMPLEX,
        (Task::UserInfo, false) => ch::USER_INFO_SIMPLE,
        (Task::UserInfo, true) => ch::USER_INFO_COMPLEX,
        (Task::CompanyInfo, false) => ch::COMPANY_INFO_SIMPLE,
        (Task::CompanyInfo, true) => ch::COMPANY_INFO_COMPLEX,
        (Task::MathFormula, false) => ch::MATH_FORMULA_SIMPLE,
        (Task::MathFormula, true) => ch::MATH_FORMULA_COMPLEX,
    }
}

/// Instruction body and seed text for a cell, placeholders unsubstituted.
fn template(task: Task, language: Language, complex: bool) -> (&'static str, &'static str) {
    let (body, seed) = english(task, complex).split_once(STARTED).expect("every template has a start marker");
    match language {
        Language::En => (body, seed),
        Language::Ch => (chinese_body(task, complex), seed),
    }
}

fn constraint_clauses(spec: &PromptSpec) -> String {
    let noun = spec.task.section_noun();
    let mut labels: Vec<u64> = spec.constraints.iter().map(|c| c.section_index).collect();
    labels.dedup();
    let mut out = match spec.language {
        Language::En => "\n\nAdditional requirements for specific sections:".to_string(),
        Language::Ch => "\n\n特定部分的附加要求：".to_string(),
    };
    for label in labels {
        let parts: Vec<String> = spec
            .constraints
            .iter()
            .filter(|c| c.section_index == label)
            .map(|c| match (&c.constraint, spec.language) {
                (Constraint::FirstChar { letter }, Language::En) => {
                    format!("the first word must begin with the letter \"{letter}\"")
                }
                (Constraint::Keyword { word }, Language::En) => format!("include the keyword \"{word}\""),
                (Constraint::Theme { name, .. }, Language::En) => {
                    format!("the content must revolve around the theme \"{name}\"")
                }
                (Constraint::FirstChar { letter }, Language::Ch) => format!("第一个词必须以字母“{letter}”开头"),
                (Constraint::Keyword { word }, Language::Ch) => format!("必须包含关键词“{word}”"),
                (Constraint::Theme { name, .. }, Language::Ch) => format!("内容必须围绕主题“{name}”展开"),
            })
            .collect();
        match spec.language {
            Language::En => out.push_str(&format!("\n- {noun} {label}: {}.", parts.join("; "))),
            Language::Ch => out.push_str(&format!("\n- {noun} {label}：{}。", parts.join("；"))),
        }
    }
    out
}

/// Full instruction text for a spec, ending with the seed that opens the document.
pub fn render_prompt(spec: &PromptSpec) -> Result<String, BenchError> {
    let complex = match spec.complexity {
        Complexity::Simple => false,
        Complexity::Complex => true,
        Complexity::FineGrained if !spec.task.is_structured() => false,
        Complexity::FineGrained => {
            return Err(BenchError::TemplateMissing(format!("no fine-grained template for {}", spec.task)));
        }
    };
    let (body, seed) = template(spec.task, spec.language, complex);
    let mut text = body.to_string();
    if spec.complexity == Complexity::FineGrained {
        text.push_str(&constraint_clauses(spec));
    }
    text.push_str(STARTED);
    text.push_str(seed);
    Ok(text
        .replace("{num_section}", &spec.num_sections.to_string())
        .replace("{word_section}", &spec.words_per_section.to_string()))
}

/// Text after the start marker; generation continues from here.
pub fn prompt_seed(spec: &PromptSpec) -> &'static str {
    template(spec.task, spec.language, spec.complexity == Complexity::Complex).1
}

/// Judge instruction with the user's request and the model's response filled in.
pub fn render_judge_prompt(user_request: &str, model_response: &str) -> String {
    let (head, rest) = en::JUDGE.split_once("{user_request}").expect("judge template has request slot");
    let (middle, tail) = rest.split_once("{model_response}").expect("judge template has response slot");
    [head, user_request, middle, model_response, tail].concat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{expand_matrix, MatrixConfig};

    fn spec(task: Task, language: Language, complexity: Complexity) -> PromptSpec {
        PromptSpec::new(task, language, complexity, 5)
    }

    #[test]
    fn story_simple_substitutes_placeholders() {
        let text = render_prompt(&spec(Task::Story, Language::En, Complexity::Simple)).unwrap();
        assert!(text.contains("consisting of 5 chapters"));
        assert!(text.contains("minimum of 200 words"));
        assert!(text.ends_with("*** started ***\n\n#*# Title:"));
        assert!(!text.contains('{'));
    }

    #[test]
    fn code_template_carries_seed_function() {
        let text = render_prompt(&spec(Task::CodeFunction, Language::En, Complexity::Simple)).unwrap();
        assert!(text.contains("def calculate_area(radius):"));
        assert!(text.contains("    return 3.14159 * radius ** 2"));
    }

    #[test]
    fn every_cell_renders() {
        for task in Task::ALL {
            for language in [Language::En, Language::Ch] {
                for complexity in [Complexity::Simple, Complexity::Complex] {
                    let text = render_prompt(&spec(task, language, complexity)).unwrap();
                    assert!(!text.contains("{num_section}") && !text.contains("{word_section}"));
                    assert!(text.contains("*** started ***"));
                    assert!(text.contains("'*** finished ***'"));
                }
            }
        }
    }

    #[test]
    fn fine_grained_lists_every_designated_section() {
        let config = MatrixConfig {
            tasks: vec![Task::Story],
            languages: vec![Language::En, Language::Ch],
            complexities: vec![Complexity::FineGrained],
            scales: vec![20],
            ..MatrixConfig::default()
        };
        for s in expand_matrix(&config).unwrap() {
            let text = render_prompt(&s).unwrap();
            let (body, _) = text.split_once(STARTED).unwrap();
            for c in &s.constraints {
                assert!(body.contains(&format!("- Chapter {}", c.section_index)), "{body}");
            }
            assert_eq!(body.matches("\n- Chapter ").count(), 5);
        }
        assert!(render_prompt(&spec(Task::UserInfo, Language::En, Complexity::FineGrained)).is_err());
    }

    #[test]
    fn judge_prompt_is_filled_once() {
        let p = render_judge_prompt("write {model_response}", "a story");
        assert!(p.starts_with("You are an expert in evaluating text quality."));
        assert!(p.contains("<User Request>\nwrite {model_response}\n</User Request>\n<Response>\na story\n</Response>"));
        assert!(p.contains(r#"{"Analysis": ..., "Relevance": ..., "Accuracy": ..., "Coherence": ..., "Clarity": ..., "Breadth and Depth": ..., "Reading Experience": ...}"#));
    }
}
