// One-column numeric CSV parsing with the same semantics as the server:
// the first column is used, a non-numeric first row is treated as a header,
// and any other unparsable (or blank) row aborts with its row number.

export class CsvError extends Error {
  constructor(message: string, readonly row: number) {
    super(message);
    this.name = 'CsvError';
  }
}

export function parseNumericColumn(text: string): number[] {
  const values: number[] = [];
  const lines = text.split(/\r\n|\r|\n/);
  // a single trailing newline is not a row
  if (lines.length > 0 && lines[lines.length - 1] === '') lines.pop();
  lines.forEach((line, idx) => {
    const row = idx + 1;
    const cell = (line.split(',')[0] ?? '').trim();
    if (cell === '') throw new CsvError(`row ${row} is blank`, row);
    const value = Number(cell);
    if (Number.isNaN(value)) {
      if (row === 1) return; // header
      throw new CsvError(`row ${row} is not numeric: '${cell}'`, row);
    }
    values.push(value);
  });
  if (values.length === 0) throw new CsvError('no numeric rows', 1);
  return values;
}
