/**
 * The render request: which CSVs to draw, how to label them, where the
 * output goes. Parsed from a JSON file with strict unknown-key rejection so
 * a typo fails loudly instead of silently using a default.
 */

import { z } from "zod";

const panelSchema = z
  .object({
    a: z.string().min(1),
    b: z.string().min(1),
    label_a: z.string().default("A"),
    label_b: z.string().default("B"),
    title: z.string().default(""),
    x_label: z.string().default(""),
    y_label: z.string().default(""),
    log_x: z.boolean().default(false),
    annotate_crossings: z.boolean().default(false),
  })
  .strict();

const cdfPairSchema = z
  .object({
    kind: z.literal("cdf_pair"),
    panels: z.array(panelSchema).min(1).max(2),
    out: z.string().min(1),
  })
  .strict();

const ltPairSchema = z
  .object({
    kind: z.literal("lt_pair"),
    panel: panelSchema,
    out: z.string().min(1),
  })
  .strict();

const capacityTableSchema = z
  .object({
    kind: z.literal("capacity_table"),
    input: z.string().min(1),
    title: z.string().default(""),
    out: z.string().min(1),
  })
  .strict();

const plotSpecSchema = z.discriminatedUnion("kind", [
  cdfPairSchema,
  ltPairSchema,
  capacityTableSchema,
]);

export type Panel = z.infer<typeof panelSchema>;
export type CdfPairSpec = z.infer<typeof cdfPairSchema>;
export type LtPairSpec = z.infer<typeof ltPairSchema>;
export type CapacityTableSpec = z.infer<typeof capacityTableSchema>;
export type PlotSpec = z.infer<typeof plotSpecSchema>;

export class PlotSpecError extends Error {
  constructor(file: string, message: string) {
    super(`${file}: ${message}`);
    this.name = "PlotSpecError";
  }
}

export function parsePlotSpec(text: string, file: string): PlotSpec {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new PlotSpecError(file, `not valid JSON (${(err as Error).message})`);
  }
  const result = plotSpecSchema.safeParse(raw);
  if (!result.success) {
    const detail = result.error.issues
      .map((issue) => {
        const where = issue.path.length ? issue.path.join(".") : "(top level)";
        return `${where}: ${issue.message}`;
      })
      .join("; ");
    throw new PlotSpecError(file, detail);
  }
  return result.data;
}
