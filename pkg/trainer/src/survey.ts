/** Canonical binarized survey schema: names, question text, protected index. */

export const SURVEY_FEATURE_NAMES = [
  "age_over_31",
  "male",
  "self_employed",
  "family_history",
  "small_company",
  "remote_work",
  "tech_company",
  "knows_benefits",
  "knows_care_options",
  "knows_wellness_program",
  "knows_seek_help",
  "anonymity_protected",
  "easy_leave",
  "mh_talk_consequence",
  "ph_talk_consequence",
  "coworkers_open",
  "supervisor_open",
  "mh_as_serious_as_ph",
  "observed_consequences",
] as const;

export const SURVEY_QUESTIONS: Record<string, string> = {
  age_over_31: "Is the applicant older than 31?",
  male: "Is the applicant male?",
  self_employed: "Is the applicant self-employed?",
  family_history: "Family history of mental health issues?",
  small_company: "Works with a small number of people?",
  remote_work: "Works remotely?",
  tech_company: "Works in a tech company?",
  knows_benefits: "Aware of provided benefits?",
  knows_care_options: "Aware of care options?",
  knows_wellness_program: "Aware of employee wellness programs?",
  knows_seek_help: "Knows how to seek help?",
  anonymity_protected: "Is anonymity protected if using mental health resources?",
  easy_leave: "Is it easy to take medical leave for mental health?",
  mh_talk_consequence:
    "Believes discussing mental health with employer has negative consequences?",
  ph_talk_consequence:
    "Believes discussing physical health with employer has negative consequences?",
  coworkers_open: "Comfortable discussing mental health with coworkers?",
  supervisor_open: "Comfortable discussing mental health with supervisors?",
  mh_as_serious_as_ph:
    "Believes employer treats mental health as seriously as physical health?",
  observed_consequences:
    "Has observed negative consequences for coworkers with mental health conditions?",
};

export const PROTECTED_FEATURE = "male";

export function questionFor(name: string): string {
  return SURVEY_QUESTIONS[name] ?? `${name}?`;
}
