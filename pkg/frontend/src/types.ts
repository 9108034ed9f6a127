// Wire types of the game service (board/transcript JSON schemas).

export interface BoardCell {
  pos: number[];
  exp: number;
}

export interface BoardJson {
  shape: number[];
  cells: BoardCell[];
}

export interface Session {
  id: string;
  version: number;
  shape: number[];
  mode: string;
  seed: number;
  human_role: string;
  to_act: string;
  turn: number;
  over: boolean;
  board: BoardJson;
}

export interface MoveAction {
  type: 'move';
  axis: number;
  sign: number;
}

export interface PlaceAction {
  type: 'place';
  pos: number[];
  exp: number;
}

export interface GameEvent {
  turn: number;
  actor: string;
  action: MoveAction | PlaceAction;
  rationale: string;
  board_after: BoardJson;
  version: number;
}

export interface Hint {
  version: number;
  rationale: string;
  move?: { axis: number; sign: number };
  place?: { pos: number[]; exp: number };
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}

export type StreamMessage =
  | { type: 'snapshot'; session: Session }
  | ({ type: 'event' } & GameEvent)
  | { type: 'over'; version: number }
  | { type: 'error'; error: string; detail: string };
