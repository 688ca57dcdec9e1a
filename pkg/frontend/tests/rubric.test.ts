import assert from 'node:assert/strict';
import { test } from 'node:test';

import { isValidGrade, MAX_GRADE, MIN_GRADE, RUBRIC } from '../src/rubric.js';

test('rubric covers exactly the grades 0 through 4', () => {
  assert.equal(RUBRIC.length, 5);
  assert.deepEqual(
    RUBRIC.map((entry) => entry.grade),
    [0, 1, 2, 3, 4],
  );
  assert.equal(MIN_GRADE, 0);
  assert.equal(MAX_GRADE, 4);
});

test('every rubric entry has a non-empty label', () => {
  for (const entry of RUBRIC) {
    assert.ok(entry.label.length > 10, `grade ${entry.grade}`);
  }
});

test('grade validation accepts only integers 0-4', () => {
  for (const grade of [0, 1, 2, 3, 4]) {
    assert.ok(isValidGrade(grade));
  }
  for (const grade of [-1, 5, 2.5, NaN, 100]) {
    assert.ok(!isValidGrade(grade), String(grade));
  }
});
