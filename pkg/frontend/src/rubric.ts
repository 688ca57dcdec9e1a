/** The five-point grading rubric shown to every grader. */

export interface RubricEntry {
  grade: number;
  label: string;
}

export const RUBRIC: readonly RubricEntry[] = [
  {
    grade: 0,
    label: 'The snippet is not at all helpful, it is irrelevant to the problem.',
  },
  {
    grade: 1,
    label:
      'The snippet is slightly helpful, it contains information relevant to the problem, but it is easier to write the solution from scratch.',
  },
  {
    grade: 2,
    label:
      'The snippet is somewhat helpful, it requires significant changes (compared to the size of the snippet), but is still useful.',
  },
  {
    grade: 3,
    label: 'The snippet is helpful but needs to be slightly changed to solve the problem.',
  },
  {
    grade: 4,
    label: 'The snippet is very helpful, it solves the problem.',
  },
] as const;

export const MIN_GRADE = 0;
export const MAX_GRADE = 4;

export function isValidGrade(grade: number): boolean {
  return Number.isInteger(grade) && grade >= MIN_GRADE && grade <= MAX_GRADE;
}
