import { z } from 'zod';

export const KINDS = ['text_to_amr', 'amr_to_text', 'perplexity', 'embed'] as const;
export type Kind = (typeof KINDS)[number];

export const requestSchema = z.object({
  id: z.string(),
  kind: z.enum(KINDS),
  payload: z.union([z.string(), z.array(z.string())]),
});
export type AdapterRequest = z.infer<typeof requestSchema>;

export const responseSchema = z.union([
  z.object({
    id: z.string(),
    ok: z.literal(true),
    payload: z.union([z.string(), z.number(), z.array(z.number())]),
  }),
  z.object({
    id: z.string(),
    ok: z.literal(false),
    error: z.string(),
  }),
]);
export type AdapterResponse = z.infer<typeof responseSchema>;

export function parseRequestLine(line: string): AdapterRequest {
  let data: unknown;
  try {
    data = JSON.parse(line);
  } catch (e) {
    throw new Error(`request line is not JSON: ${(e as Error).message}`);
  }
  const result = requestSchema.safeParse(data);
  if (!result.success) {
    throw new Error(`request does not match schema: ${result.error.issues[0]?.message}`);
  }
  return result.data;
}

export function okResponse(id: string, payload: string | number | number[]): AdapterResponse {
  return { id, ok: true, payload };
}

export function errorResponse(id: string, error: string): AdapterResponse {
  return { id, ok: false, error };
}

export function serializeResponse(response: AdapterResponse): string {
  return JSON.stringify(response);
}
