// JSON payload shapes of the fria-engine service (field names mirror the API).

export interface MetadataView {
  created: string;
  modified: string | null;
  title: string;
  identifier: string;
  publisher: string;
  description: string;
  creator_tool: string | null;
}

export interface NecessityView {
  status: string;
  justification: string;
  condition_flags: Record<string, boolean>;
}

export interface ImpactView {
  impact: string;
  affected: string;
  likelihood: string;
  right: string | null;
}

export interface RiskView {
  risk: string;
  harm_category: string;
  residual_level: string;
  accepted: boolean;
}

export interface InputsView {
  intended_purpose: { text?: string; iri?: string };
  duration: string;
  frequency: string;
  processes: string[];
  human_subject_categories: string[];
  impacts: ImpactView[];
  risks: RiskView[];
  mitigation_measures: string[];
}

export interface OutcomeView {
  status: string;
  deployment_permitted: boolean;
  rights_impacted: string[];
  rationale: string;
}

export interface NotificationView {
  status: string;
  authority: string | null;
  notice: string | null;
  exemption_basis: string | null;
  sent_on: string | null;
}

export interface RecordView {
  iri: string;
  metadata: MetadataView;
  necessity: NecessityView | null;
  inputs: InputsView | null;
  outcome: OutcomeView | null;
  notification: NotificationView | null;
  tools_used: string[];
  questionnaires: string[];
}

export interface StoredView {
  id: string;
  state: string;
  version: number;
  stale: boolean;
  record: RecordView;
}

export interface Choice {
  iri: string;
  label: string;
  definition: string;
}

export interface QuestionView {
  id: string;
  prompt: string;
  maps_to: string;
  target_stage: string;
  answer_kind: string;
  required: boolean;
  guidance: string;
  choices: Choice[] | null;
  value_class?: string;
}

export interface NextQuestion {
  question: QuestionView | null;
  version: number;
}

export interface SectionView {
  id: string;
  title: string;
  questions: QuestionView[];
}

export interface QuestionnaireView {
  id: string;
  title: string;
  sections: SectionView[];
}

export interface Violation {
  focus: string;
  shape: string;
  path: string;
  constraint: string;
  message: string;
  source: string;
}

export interface ValidationView {
  conforms: boolean;
  violations: Violation[];
}

export interface CqAnswerView {
  cq: string;
  question: string;
  bindings: string[][];
  empty_reason: string | null;
}

export interface OutcomeResult {
  state: string;
  version: number;
  status: string;
  deployment_permitted: boolean;
}

export interface NoticeView {
  notice: string;
  authority: string;
  text: string;
  graph_ttl: string;
}

export type AnswerValue = string | boolean | string[];
