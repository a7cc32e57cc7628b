#include "rcsim/prompts.hpp"

namespace rcsim::prompts {

namespace {

// --- bundled template text (version 1) ---

constexpr std::string_view kProfileSystem =
    "You are an autonomous intelligent agent tasked with writing the first-person persona of a "
    "researcher based on his publications.\n"
    "You will be provided with the following information:\n"
    "Publications - A list of paper abstracts written by the researcher that you will be writing "
    "about.\n"
    "You should provide the following information:\n"
    "Persona - A comprehensive first-person persona.\n"
    "You should focus more on recent publications, which reflect the researcher's recent persona. "
    "You should be concise and clear. The persona should range from 100 to 300 words.";

constexpr std::string_view kProfileExemplarUser =
    "Here is the publication history of one researcher:\n"
    "Publication1:\n"
    "Learning node embeddings that capture a node's position within the broader graph structure "
    "is crucial for many prediction tasks on graphs. However, existing Graph Neural Network (GNN) "
    "architectures have limited power in capturing the position/location of a given node "
    "concerning all other nodes of the graph. Here we propose Position-aware Graph Neural "
    "Networks (P-GNNs), a new class of GNNs for computing position-aware node embeddings. P-GNN "
    "first samples sets of anchor nodes, computes the distance of a given target node to each "
    "anchor set, and then learns a non-linear distance-weighted aggregation scheme over the "
    "anchor sets. This way, P-GNNs can capture the positions/locations of nodes concerning the "
    "anchor nodes. P-GNNs have several advantages: they are inductive, scalable, and can "
    "incorporate node feature information. We apply P-GNNs to multiple prediction tasks, "
    "including link prediction and community detection. We show that P-GNNs consistently "
    "outperform state-of-the-art GNNs, with up to 66% improvement in terms of the ROC AUC "
    "score.\n"
    "...\n"
    "Publication8:\n"
    "AutoML has demonstrated remarkable success in finding an effective neural architecture for "
    "a given machine learning task defined by a specific dataset and an evaluation metric. "
    "However, most present AutoML techniques consider each task independently from scratch, "
    "which requires exploring many architectures, leading to high computational costs. Here we "
    "propose AutoTransfer, an AutoML solution that improves search efficiency by transferring "
    "the prior architectural design knowledge to the novel task of interest. Our key innovation "
    "includes a task-model bank that captures the model performance over a diverse set of GNN "
    "architectures and tasks, and a computationally efficient task embedding that can accurately "
    "measure the similarity among different tasks. Based on the task-model bank and the task "
    "embeddings, we estimate the design priors of desirable models of the novel task by "
    "aggregating a similarity-weighted sum of the top-K design distributions on tasks that are "
    "similar to the task of interest. The computed design priors can be used with any AutoML "
    "search algorithm. We evaluate AutoTransfer on six datasets in the graph machine learning "
    "domain. Experiments demonstrate that (i) our proposed task embedding can be computed "
    "efficiently and that tasks with similar embeddings have similar best-performing "
    "architectures; (ii) AutoTransfer significantly improves search efficiency with the "
    "transferred design priors, reducing the number of explored architectures by an order of "
    "magnitude. Finally, we release GNN-Bank-101, a large-scale dataset of detailed GNN training "
    "information of 120,000 task-model combinations to facilitate and inspire future research.\n"
    "Please begin writing the first-person persona that covers the previous research experience.";

constexpr std::string_view kProfileExemplarAssistant =
    "I am a researcher focused on advancing graph neural networks (GNNs) and machine learning. "
    "My key contributions include Position-aware GNNs (P-GNNs) for capturing node positions, "
    "Identity-aware GNNs (ID-GNNs) with greater expressive power, and the ROLAND framework for "
    "dynamic graph learning. I also study the relationship between neural network structures and "
    "their performance using relational graphs and have explored a vast GNN design space to "
    "enhance predictive capabilities across diverse tasks.";

constexpr std::string_view kFiveQuestionsFull =
    "Here are the five core questions:\n"
    "[Question 1] - What is the problem?\n"
    "Formulate the specific research question you aim to address.\n"
    "Only output one question and do not include any more information.\n"
    "[Question 2] - Why is it interesting and important?\n"
    "Explain the broader implications of solving this problem for the research community.\n"
    "Discuss how the paper will affect future research.\n"
    "Discuss how addressing this question could advance knowledge or lead to practical "
    "applications.\n"
    "[Question 3] - Why is it hard?\n"
    "Discuss the challenges and complexities involved in solving this problem.\n"
    "Explain why naive or straightforward approaches may fail.\n"
    "Identify any technical, theoretical, or practical obstacles that need to be overcome.\n"
    "MAKE IT CLEAR.\n"
    "[Question 4] - Why hasn't it been solved before?\n"
    "Identify gaps or limitations in previous research or existing solutions.\n"
    "Discuss any barriers that have prevented this problem from being solved until now.\n"
    "Explain how your approach differs from or improves upon prior work.\n"
    "MAKE IT CLEAR.\n"
    "[Question 5] - What are the key components of my approach and results?\n"
    "Outline your proposed methodology in detail, including the method, dataset, and metric that "
    "you plan to use. But you must include these in one paragraph and not use subtitles.\n"
    "Describe the expected outcomes.\n"
    "MAKE IT CLEAR.";

constexpr std::string_view kFiveQuestionsShort =
    "Here are the five core questions to consider:\n"
    "[Question 1] - What is the problem?\n"
    "[Question 2] - Why is it interesting and important?\n"
    "[Question 3] - Why is it hard?\n"
    "[Question 4] - Why hasn't it been solved before?\n"
    "[Question 5] - What are the key components of my approach and results?";

constexpr std::string_view kReviewStrengthSystem =
    "You are an autonomous intelligent agent tasked to review a submission to an academic "
    "conference.\n"
    "You should write the strength of this paper.\n"
    "You will be provided with the following information:\n"
    "Submission - Full content of the submitted paper.\n"
    "You should provide the following information:\n"
    "Strength - Advantages and strengths of the submission that can improve its chances of being "
    "accepted.";

constexpr std::string_view kReviewWeaknessSystem =
    "You are an autonomous intelligent agent tasked to review a submission to an academic "
    "conference.\n"
    "You should write the weaknesses of this paper.\n"
    "You will be provided with the following information:\n"
    "Submission - Full content of the submitted paper.\n"
    "You should provide the following information:\n"
    "Weakness - Disadvantages and drawbacks of the submission that must be improved before it "
    "can be accepted.\n"
    "You should notice that the abstract might not cover every detail, so you shouldn't be "
    "overly strict.";

constexpr std::string_view kReviewCriteriaStrength =
    "Please evaluate the submission based on the following criteria:\n"
    "Clarity: Is the writing clear, structured, and do terms defined?\n"
    "Baselines: Are baseline comparisons relevant, sufficient, and not excessive?\n"
    "Novelty: Is the approach innovative or distinct from prior work?\n"
    "Results: Are improvements significant, well-supported, and statistically robust?\n"
    "Limitations: Are weaknesses acknowledged and future work discussed?\n"
    "Related Work: Are key references cited and connections made?\n"
    "Technical: Are methods detailed enough for replication?\n"
    "Please combine both the ideas and the experiments in the submission when evaluating it.\n"
    "When commenting on the experiments, refer to the exact numbers from the experiments.\n"
    "Please begin writing the strength of the submission.\n"
    "It should be 200 words long.\n"
    "Please write in bullet points.\n"
    "Do not limit yourself to the aforementioned criteria, like clarity, baselines, novelty, "
    "results, limitations, related work, and technical.";

constexpr std::string_view kReviewCriteriaWeakness =
    "Please evaluate the submission based on the following criteria:\n"
    "Clarity: Is the writing clear, structured, and terms defined?\n"
    "Baselines: Are baseline comparisons relevant, sufficient, and not excessive?\n"
    "Novelty: Is the approach innovative or distinct from prior work?\n"
    "Results: Are improvements significant, well-supported, and statistically robust?\n"
    "Limitations: Are weaknesses acknowledged and future work discussed?\n"
    "Related Work: Are key references cited and connections made?\n"
    "Technical: Are methods detailed enough for replication?\n"
    "Please combine both the ideas and the experiments in the submission when evaluating it.\n"
    "When commenting on the experiments, refer to the exact numbers from the experiments.\n"
    "Please begin writing the strength of the submission.\n"
    "It should be 200 words long.\n"
    "Please write in bullet points.\n"
    "Do not limit yourself to the aforementioned criteria, like clarity, baselines, novelty, "
    "results, limitations, related work, and technical.";

constexpr std::string_view kProfileUseLine =
    "You should also use your previous experience in your profile when analyzing the submission.";

constexpr std::string_view kScoreSystem =
    "You are an autonomous intelligent agent tasked to score the following submission.\n"
    "You should act as a professional and fair member of that conference to score.\n"
    "The score should be between 1 and 10, where 1 is the lowest and 10 is the highest.\n"
    "You will be provided with the following information:\n"
    "Paper - Full content of a submission to an academic conference.\n"
    "Strengths - Strengths of the submission.\n"
    "Weakness - Weakness of the submission.\n"
    "You should provide the following information:\n"
    "Score - A score between 1 to 10 to evaluate the overall quality of the submission to an "
    "academic journal. It should be one of 1, 2, ..., 10. 1 is the lowest score, while 10 is the "
    "highest score.\n"
    "You should just provide one number as the score and nothing else.\n"
    "Please evaluate the submission based on the summarized strengths and weaknesses provided. "
    "The score should be more related to weakness. If there is a critical weakness in the "
    "submission, you should give a lower score. If the submission has a minor weakness, you can "
    "give a higher score. If the submission has no weaknesses, you should give a high score. But "
    "the strengths should also be considered in the evaluation.";

constexpr std::string_view kScoreRubrics =
    "Please refer to the rubrics below to evaluate the submission:\n"
    "10/10: The submission is in the top 2% of all papers. It changed my thinking on its topic, "
    "being one of the most thorough, convincing, and well-written papers I have ever read. I "
    "will fight for this paper to be accepted.\n"
    "8/10: The submission is among the top 10% of all the papers. It provides sufficient "
    "justification for all its arguments and claims. Some extra experimentation is needed, but "
    "they are not essential. The proposed method is very original and can be generalized to "
    "various fields. This submission deepens the understanding of some phenomena or lowers the "
    "bar for future research on an existing problem.\n"
    "6/10: The submission gives sufficient support for its major arguments or claims. However, "
    "some minor points are not well justified and need extra support or details. The proposed "
    "method is moderately original, and it is generalizable to various fields. The submission "
    "itself is not particularly innovative, so it would not be a significant loss if it were not "
    "accepted.\n"
    "5/10: Some of the major arguments or claims are not sufficiently justified. There exist "
    "major weaknesses in technical or methodological aspects. The proposed method is somewhat "
    "original, and it is generalizable to various fields. I am more on the side of rejection, "
    "but I can be convinced otherwise.\n"
    "3/10: The submission makes only marginal contributions to the field.\n"
    "1/10: The submission is not sufficiently thorough for publication or is not relevant to the "
    "conference.\n"
    "Your score is: [score]";

constexpr std::string_view kMetareviewStrengthSystem =
    "You are an autonomous intelligent agent tasked to write the strength of the submission for "
    "the following submission you have made to an academic conference. Your summary of strength "
    "should summarize the reviews to help the reviewers make a decision.\n"
    "You will be provided with the following information:\n"
    "Submission - Full content of the paper submitted to this conference.\n"
    "Reviews - It typically contains the score, strength, and weakness of the submission, each "
    "by a different reviewer.\n"
    "You should provide the following information:\n"
    "Strength - The strength of the submission based on the reviews.";

constexpr std::string_view kMetareviewWeaknessSystem =
    "You are an autonomous intelligent agent tasked to write the weakness of the submission for "
    "the following submission you have made to an academic conference. Your summary of weakness "
    "should summarize the reviews to help the reviewers make a decision.\n"
    "You will be provided with the following information:\n"
    "Submission - Full content of the paper submitted to this conference.\n"
    "Reviews - It typically contains the score, weakness, and strength of the submission, each "
    "by a different reviewer.\n"
    "You should provide the following information:\n"
    "Weakness - The weakness of the submission based on the reviews.";

constexpr std::string_view kPaperTransformHead =
    "Here is a high-level, summarized insight into a research field of machine learning.\n"
    "Here are the five core questions:\n"
    "[Question 1] - What is the problem?\n"
    "Formulate the specific research question you aim to address.\n"
    "Only output one question and do not include any more information.\n"
    "[Question 2] - Why is it interesting and important?\n"
    "Explain the broader implications of solving this problem for the research community.\n"
    "Discuss how such a paper will affect future research.\n"
    "Discuss how addressing this question could advance knowledge or lead to practical "
    "applications.\n"
    "[Question 3] - Why is it hard?\n"
    "Discuss the challenges and complexities involved in solving this problem.\n"
    "Explain why naive or straightforward approaches may fail.\n"
    "Identify any technical, theoretical, or practical obstacles that need to be overcome.\n"
    "MAKE IT CLEAR.\n"
    "[Question 4] - Why hasn't it been solved before?\n"
    "Identify gaps or limitations in previous research or existing solutions.\n"
    "Discuss any barriers that have prevented this problem from being solved until now.\n"
    "Explain how your approach differs from or improves upon prior work.\n"
    "MAKE IT CLEAR.\n"
    "[Question 5] - What are the key components of my approach and results?\n"
    "Outline your proposed methodology in detail, including the method, dataset, and metric "
    "that you plan to use. Describe the expected outcomes.\n"
    "MAKE IT CLEAR.";

constexpr std::string_view kJudgeHead =
    "You are an expert evaluator of research proposals. Given a reference and a generated "
    "proposal, rate their similarity from 1 (completely different) to 10 (nearly identical) for "
    "each of the following dimensions:\n"
    "\n"
    "- Topic Consistency: Do both proposals address the same research topic or problem area?\n"
    "- Method Consistency: Are the research methods and approaches used in both proposals "
    "similar?\n"
    "- Factual Consistency: Are the datasets, metrics, and models mentioned consistent between "
    "the two proposals?\n"
    "- Claim Consistency: Do both proposals present similar conclusions or findings?\n"
    "- Application Context Consistency: Are the application domains or use-cases targeted by "
    "both proposals the same?\n"
    "- Overall Semantic Similarity: Do the two proposals convey the same overall idea or "
    "message?\n"
    "\n"
    "Additionally, assess the following for each proposal individually:\n"
    "- Novelty of Reference Proposal: Does the reference proposal introduce new ideas or "
    "perspectives?\n"
    "- Feasibility of Reference Proposal: How realistic and implementable is the reference "
    "proposal based on its described methods and objectives?\n"
    "- Novelty of Generated Proposal: Does the generated proposal introduce new ideas or "
    "perspectives?\n"
    "- Feasibility of Generated Proposal: How realistic and implementable is the generated "
    "proposal based on its described methods and objectives?";

constexpr std::string_view kJudgeTail =
    "Respond strictly in JSON format like:\n"
    "{\n"
    "  \"Topic Consistency\": X,\n"
    "  \"Method Consistency\": X,\n"
    "  \"Factual Consistency\": X,\n"
    "  \"Claim Consistency\": X,\n"
    "  \"Application Context Consistency\": X,\n"
    "  \"Overall Semantic Similarity\": X,\n"
    "  \"Novelty of Reference Proposal\": X,\n"
    "  \"Feasibility of Reference Proposal\": X,\n"
    "  \"Novelty of Generated Proposal\": X,\n"
    "  \"Feasibility of Generated Proposal\": X\n"
    "}";

// Numbered block such as "Paper 1: ...\nPaper 2: ...". Returns the text
// and marks [begin,end) of the block inside `content` for truncation.
std::string numbered_block(std::string_view label, const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += std::string(label) + " " + std::to_string(i + 1) + ": " + items[i] + "\n";
  }
  return out;
}

ChatMessage user_with_list(std::string head, const std::string& list_block, std::string tail) {
  ChatMessage m;
  m.role = Role::User;
  std::size_t begin = head.size();
  m.content = std::move(head) + list_block + std::move(tail);
  if (!list_block.empty()) {
    m.list_section = {begin, begin + list_block.size()};
  }
  return m;
}

ChatMessage sys(std::string_view text) { return {Role::System, std::string(text), {}}; }
ChatMessage user(std::string text) { return {Role::User, std::move(text), {}}; }
ChatMessage assistant(std::string text) { return {Role::Assistant, std::move(text), {}}; }

void push_profile_exchange(Prompt& prompt, const std::optional<std::string>& profile) {
  if (!profile) return;
  prompt.push_back(user("Who are you?"));
  prompt.push_back(assistant(*profile));
}

}  // namespace

Prompt profile_from_publications(const std::vector<std::string>& publications) {
  Prompt prompt;
  prompt.push_back(sys(kProfileSystem));
  prompt.push_back(user(std::string(kProfileExemplarUser)));
  prompt.push_back(assistant(std::string(kProfileExemplarAssistant)));
  prompt.push_back(user_with_list("Here is the publication history of one researcher:\n",
                                  numbered_block("Publication", publications),
                                  "Please begin writing the first-person persona."));
  return prompt;
}

Prompt proposal_message(const std::optional<std::string>& profile,
                        const std::vector<std::string>& cited_abstracts) {
  Prompt prompt;
  push_profile_exchange(prompt, profile);
  std::string tail;
  if (!cited_abstracts.empty()) {
    tail +=
        "You need to write a research proposal for a paper in the field of Machine Learning "
        "based on these related papers.\n"
        "The research proposal should rely more on the cited papers rather than your own "
        "research experience.\n"
        "Your research experience should be utilized to select the most useful and valuable "
        "papers from the related papers for proposal writing.\n";
  } else {
    tail += "You need to write a research proposal for a paper in the field of Machine "
            "Learning.\n";
  }
  tail += "Here is a high-level, summarized insight into the Machine Learning research field.\n";
  tail += std::string(kFiveQuestionsFull) + "\n";
  tail += "Please brainstorm the following proposal with the given format.";
  std::string head =
      cited_abstracts.empty() ? "" : "Here is the content collected from related papers:\n";
  prompt.push_back(user_with_list(std::move(head), numbered_block("Paper", cited_abstracts),
                                  std::move(tail)));
  return prompt;
}

Prompt proposal_aggregation(const std::vector<std::string>& candidates) {
  Prompt prompt;
  std::string head =
      "Here is a high-level, summarized insight of a research field: Machine Learning.\n" +
      std::string(kFiveQuestionsShort) + "\n" +
      "Multiple papers have been generated for the above questions:\n";
  std::string tail =
      "Your task is to summarize and select the key insights that are suitable from these "
      "proposals.\n"
      "1. Identify shared themes and common points among the proposals.\n"
      "2. Highlight and select any valuable perspectives or contrasting elements and combine "
      "them into one proposal.\n"
      "3. Provide a concise proposal for each question based on the proposal candidates.\n"
      "Output the result in the provided five-question format.\n"
      "Ensure the generated paper is clear, concise, and avoids repeating full proposals "
      "verbatim.";
  prompt.push_back(
      user_with_list(std::move(head), numbered_block("Paper", candidates), std::move(tail)));
  return prompt;
}

namespace {

Prompt review_message(std::string_view system_text, std::string_view criteria,
                      const std::optional<std::string>& profile, const std::string& full_paper,
                      const std::vector<std::string>& cited_abstracts) {
  Prompt prompt;
  prompt.push_back(sys(system_text));
  std::string head;
  if (profile) {
    head += "Here is your profile:\n" + *profile + "\n";
  }
  head += "Here is the submission:\n" + full_paper + "\n";
  if (!cited_abstracts.empty()) {
    head += "Here are the abstracts of the cited papers:\n";
  }
  std::string tail(criteria);
  if (profile) {
    tail += "\n";
    tail += kProfileUseLine;
  }
  prompt.push_back(
      user_with_list(std::move(head), numbered_block("Paper", cited_abstracts), std::move(tail)));
  return prompt;
}

Prompt metareview_message(std::string_view system_text, std::string_view section,
                          const std::string& full_paper,
                          const std::vector<std::string>& review_texts) {
  Prompt prompt;
  prompt.push_back(sys(system_text));
  std::string head = "Here is the paper:\n" + full_paper + "\nHere are the reviews:\n";
  std::string tail = "Please summarize the important points from the `" + std::string(section) +
                     "' section of the reviews.\n"
                     "Please write in bullet points. It should be 200 words long.";
  prompt.push_back(
      user_with_list(std::move(head), numbered_block("Review", review_texts), std::move(tail)));
  return prompt;
}

}  // namespace

Prompt review_strength(const std::optional<std::string>& profile, const std::string& full_paper,
                       const std::vector<std::string>& cited_abstracts) {
  return review_message(kReviewStrengthSystem, kReviewCriteriaStrength, profile, full_paper,
                        cited_abstracts);
}

Prompt review_weakness(const std::optional<std::string>& profile, const std::string& full_paper,
                       const std::vector<std::string>& cited_abstracts) {
  return review_message(kReviewWeaknessSystem, kReviewCriteriaWeakness, profile, full_paper,
                        cited_abstracts);
}

Prompt review_score(const std::optional<std::string>& profile, const std::string& strengths_text,
                    const std::string& weaknesses_text) {
  Prompt prompt;
  prompt.push_back(sys(kScoreSystem));
  std::string content;
  if (profile) {
    content += "Here is your profile:\n" + *profile + "\n";
  }
  content += "Here is the strength of the paper:\n" + strengths_text + "\n";
  content += "Here is the weakness of the paper:\n" + weaknesses_text + "\n";
  content += kScoreRubrics;
  prompt.push_back(user(std::move(content)));
  return prompt;
}

Prompt metareview_strength(const std::string& full_paper,
                           const std::vector<std::string>& review_texts) {
  return metareview_message(kMetareviewStrengthSystem, "strength", full_paper, review_texts);
}

Prompt metareview_weakness(const std::string& full_paper,
                           const std::vector<std::string>& review_texts) {
  return metareview_message(kMetareviewWeaknessSystem, "weakness", full_paper, review_texts);
}

Prompt paper_transform(const std::string& introduction) {
  Prompt prompt;
  std::string content = std::string(kPaperTransformHead) + "\n";
  content += "The introduction of paper:\n";
  std::size_t begin = content.size();
  content += introduction + "\n";
  std::size_t end = content.size();
  content += "Please provide the five core questions based on the above content.";
  ChatMessage m{Role::User, std::move(content), {{begin, end}}};
  prompt.push_back(std::move(m));
  return prompt;
}

Prompt review_transform(const std::string& strength_or_weakness) {
  Prompt prompt;
  prompt.push_back(sys("You are a helpful agent."));
  std::string content = strength_or_weakness + "\n";
  std::size_t end = content.size();
  content +=
      "Please rewrite the following strength in bullet points.\n"
      "Do not include anything else.\n"
      "Start from '-' for each bullet point.";
  ChatMessage m{Role::User, std::move(content), {{0, end}}};
  prompt.push_back(std::move(m));
  return prompt;
}

Prompt judge(const std::string& reference_text, const std::string& generated_text) {
  Prompt prompt;
  std::string content = std::string(kJudgeHead) + "\n\n";
  content += "Here is the reference proposal:\n" + reference_text + "\n\n";
  content += "Here is the generated proposal:\n" + generated_text + "\n\n";
  content += kJudgeTail;
  prompt.push_back(user(std::move(content)));
  return prompt;
}

Prompt with_format_reminder(Prompt prompt, const std::string& bad_reply,
                            std::string_view reminder) {
  prompt.push_back(assistant(bad_reply));
  prompt.push_back(user(std::string(reminder)));
  return prompt;
}

}  // namespace rcsim::prompts
