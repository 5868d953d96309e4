/**
 * Payload shapes returned by the carbongov HTTP service. Field names match
 * the server's JSON exactly; everything displayed in the console comes from
 * these objects, never from values computed client-side.
 */

export interface ChunkMetadata {
  city: string | null;
  year: number | null;
  sector: string | null;
  doc_type: string | null;
  sub_corpus: string | null;
}

export interface EvidenceItem {
  chunk_id: string;
  similarity: number;
  metadata: ChunkMetadata;
  excerpt: string;
}

export interface KeyNumber {
  value: number;
  unit: string;
  indicator: string;
  source_chunk_id: string;
  city: string | null;
  year: number | null;
}

export interface UncertaintyFlag {
  kind: string;
  message: string;
  involved_chunk_ids: string[];
}

export interface QAAnswer {
  question: string;
  answer_text: string;
  evidence: EvidenceItem[];
  key_numbers: KeyNumber[];
  flags: UncertaintyFlag[];
}

export interface SectorShare {
  share: number;
  chunk_ids: string[];
}

export interface AssessmentDiagnostics {
  city: string;
  total_emissions: KeyNumber | null;
  sector_shares: Record<string, SectorShare>;
  trend_stage: string;
  peaking_status: string;
  peaking_year: number | null;
  key_emitters: string[];
  time_span: [number, number] | null;
  evidence: EvidenceItem[];
  flags: UncertaintyFlag[];
}

export interface PlanGoal {
  text: string;
  indicator: string | null;
  target_year: number | null;
}

export interface Recommendation {
  text: string;
  sector: string | null;
  chunk_ids: string[];
}

export interface GovernancePlan {
  city: string;
  goals: PlanGoal[];
  sections: Record<string, Recommendation[]>;
  flags: UncertaintyFlag[];
}

export interface ReportSectionContent {
  heading: string;
  paragraphs: string[];
}

export interface ReportDocument {
  title: string;
  city: string;
  sections: ReportSectionContent[];
  source_register: [string, string][];
}

export interface WorkflowOutputs {
  Assessment?: AssessmentDiagnostics;
  Planning?: GovernancePlan;
  Report?: ReportDocument;
}

export interface WorkflowResult {
  plan: unknown;
  outputs: WorkflowOutputs;
}

export type JobStatus = 'Queued' | 'Running' | 'Done' | 'Failed';

export interface JobRecord {
  job_id: string;
  request: { kind: string; city: string | null };
  status: JobStatus;
  result: WorkflowResult | null;
  error: string | null;
  created_at: string;
  started_at: string | null;
  finished_at: string | null;
}

export interface EvidenceDetail {
  chunk_id: string;
  text: string;
  char_span: [number, number];
  metadata: ChunkMetadata;
  doc_id: string;
  doc_title: string;
  sub_corpus: string | null;
}

export interface HealthInfo {
  status: string;
  version: string;
  chunks_indexed: number;
  documents: number;
}

export interface FilterSpec {
  city?: string;
  year_from?: number;
  year_to?: number;
  sectors?: string[];
  sub_corpora?: string[];
}

export type WorkflowKind = 'Assess' | 'Plan' | 'Report';

/** Plan sections in the order the server guarantees. */
export const PLAN_SECTION_ORDER = [
  'SpatialInterventions',
  'InfrastructureUpgrades',
  'PolicyMechanisms',
  'MarketIncentives',
  'MonitoringEvaluation',
] as const;

/** Report sections in the order the server guarantees. */
export const REPORT_SECTION_ORDER = [
  'Status',
  'Problems',
  'Targets',
  'Interventions',
  'MonitoringEvaluation',
  'Sources',
] as const;
