/// Questions for the preparatory conversation with the researcher. The
/// answers are used by hand to fill in the report configuration.
pub const INTERVIEW_QUESTIONS: [&str; 20] = [
    "Which name variants and identifiers (ORCID, database author ids) have you published under?",
    "Is your complete publication list attached, and is it current?",
    "Which years should the evaluation cover?",
    "Which of your affiliations should count as your home institution?",
    "What is the main discipline you would like to be compared against?",
    "Which journals or conferences do you consider the most important in your field?",
    "Are there national or discipline-specific journal lists that matter for your evaluation?",
    "Which citation databases index your field reasonably well?",
    "Are books, book chapters or conference papers important outputs in your field?",
    "In your field, are author lists usually alphabetical or ordered by contribution?",
    "Which of your publications do you regard as your most significant, and why?",
    "Which research topics or keywords describe your current work?",
    "Have your research topics shifted during the evaluation period?",
    "Which institutions and countries do you cooperate with most?",
    "Do you cooperate with industry or other non-academic partners?",
    "Which funding bodies have supported your research?",
    "Which three researchers would you choose as peers for a comparison?",
    "Are there periods of leave, part-time work or other interruptions we should take into account?",
    "For what purpose will the report be used (appointment, evaluation, self-assessment)?",
    "Which parts of the report are most and least relevant to you?",
];

pub fn interview_template() -> String {
    let mut out = String::from("# Preparatory interview\n\nResearcher:\nDate:\n\n");
    for (i, q) in INTERVIEW_QUESTIONS.iter().enumerate() {
        out.push_str(&format!("## {}. {}\n\nAnswer:\n\n", i + 1, q));
    }
    out
}
