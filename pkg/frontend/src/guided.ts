/**
 * Guided entry forms compile to knowledge-base statements, so refining
 * the model never requires remembering the grammar.
 */

export interface AssessmentForm {
  state: string;
  basis: string[];
  value: string;
}

export interface ContributionForm {
  atoms: string[];
  value: string;
}

export interface ExpansionForm {
  state: string;
  event: string;
  probability: string;
  positiveChild: string;
  negativeChild: string;
}

const IDENT = /^[A-Za-z_][A-Za-z0-9_]*$/;
const RATIONAL = /^-?\d+(\.\d+)?(\/\d+)?$/;

function checkIdent(name: string, what: string): string {
  const trimmed = name.trim();
  if (!IDENT.test(trimmed)) {
    throw new Error(`${what} must be an identifier, got ${JSON.stringify(name)}`);
  }
  return trimmed;
}

function checkRational(value: string): string {
  const trimmed = value.trim();
  if (!RATIONAL.test(trimmed)) {
    throw new Error(`expected an exact rational (3, -20, 2/5, 0.4), got ${JSON.stringify(value)}`);
  }
  return trimmed;
}

export function assessmentStatement(form: AssessmentForm): string {
  const state = checkIdent(form.state, 'state');
  const basis = form.basis.map((b) => checkIdent(b, 'basis property'));
  if (basis.length === 0) {
    return `utility ${state} = ${checkRational(form.value)}.`;
  }
  return `assess u(${state} | ${basis.join(', ')}) = ${checkRational(form.value)}.`;
}

export function contributionStatement(form: ContributionForm): string {
  if (form.atoms.length === 0) {
    throw new Error('a contribution needs at least one property');
  }
  const atoms = form.atoms.map((a) => checkIdent(a, 'property'));
  return `contr ${atoms.join(' & ')} = ${checkRational(form.value)}.`;
}

export function expansionStatement(form: ExpansionForm): string {
  const state = checkIdent(form.state, 'state');
  const event = checkIdent(form.event, 'event');
  const pos = checkIdent(form.positiveChild, 'positive child');
  const neg = checkIdent(form.negativeChild, 'negative child');
  return `chance ${state} : ${event} = ${checkRational(form.probability)} ? ${pos} : ${neg}.`;
}
